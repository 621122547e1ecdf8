#include "doctest.h"

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "ehsched/errors.hpp"
#include "ehsched/offline.hpp"
#include "ehsched/online.hpp"
#include "ehsched/random_traces.hpp"
#include "ehsched/scenario.hpp"
#include "support.hpp"

using namespace ehsched;
using ehsched::testing::reference_completion;
using ehsched::testing::reference_rate;

namespace {

std::vector<Checkpoint> transmitting(const RunReport& r) {
    std::vector<Checkpoint> out;
    for (const Checkpoint& c : r.diagnostics) {
        if (c.power > 0.0) {
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("lazy_step picks the minimal-time power for the held energy") {
    OnlineState s;
    s.energy_available = 7.0;
    s.bits_remaining = 10.0;
    const LazyStep a = lazy_step(s, ChannelModel::siso());
    REQUIRE(a.estimated_completion);
    CHECK(*a.estimated_completion == doctest::Approx(352.8).epsilon(5e-4));
    CHECK(a.power == doctest::Approx(7.0 / *a.estimated_completion));

    s.energy_available = 7.98;
    s.bits_remaining = 9.97;
    const LazyStep b = lazy_step(s, ChannelModel::siso());
    CHECK(*b.estimated_completion == doctest::Approx(24.5).epsilon(0.01));
    CHECK(b.power == doctest::Approx(0.3257).epsilon(0.01));

    s.bits_remaining = 0.0;
    const LazyStep c = lazy_step(s, ChannelModel::siso());
    CHECK(*c.estimated_completion == 0.0);
    CHECK(c.power == 0.0);

    s.energy_available = 0.0;
    s.bits_remaining = 1.0;
    CHECK_FALSE(lazy_step(s, ChannelModel::siso()).estimated_completion);
}

TEST_CASE("lazy on a single arrival matches the offline optimum") {
    const EnergyTrace sigma2({{0.0, 2.0}}, 2.8, ChannelModel::siso());
    const RunReport lazy = run_lazy(sigma2);
    CHECK(lazy.completion_time == doctest::Approx(32.46).epsilon(2e-4));
    CHECK(lazy.completion_time == doctest::Approx(offline_schedule(sigma2).completion_time));
}

TEST_CASE("lazy rejects traces whose first harvest cannot carry the payload") {
    CHECK_THROWS_AS(run_lazy(scenario_preset("example1")), PreconditionError);
    CHECK_THROWS_AS(run_lazy(scenario_preset("example2")), PreconditionError);
}

TEST_CASE("lazy from t5 of example 2 follows the expected powers") {
    // Example 2 with the first five harvests pooled at t = 5.
    std::vector<Arrival> arrivals{{5.0, 7.0}};
    for (int n = 6; n <= 8; ++n) {
        arrivals.push_back({static_cast<double>(n), 1.0});
    }
    const EnergyTrace trace(arrivals, 10.0, ChannelModel::siso());
    const RunReport r = run_lazy(trace);
    const auto steps = transmitting(r);
    REQUIRE(steps.size() == 4);
    CHECK(steps[2].estimate == doctest::Approx(12.9).epsilon(0.01));
    CHECK(steps[3].estimate == doctest::Approx(8.4).epsilon(0.01));
    CHECK(steps[3].power == doctest::Approx(1.06).epsilon(0.01));
    CHECK(r.completion_time == doctest::Approx(8.0 + steps[3].estimate));

    // Independent replay of the same recursion.
    double energy = 7.0;
    double bits = 10.0;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const double t = *reference_completion(ChannelKind::siso, bits, energy);
        CHECK(steps[i].estimate == doctest::Approx(t).epsilon(1e-8));
        const double p = energy / t;
        CHECK(steps[i].power == doctest::Approx(p).epsilon(1e-8));
        bits -= reference_rate(ChannelKind::siso, 1.0, p);
        energy += 1.0 - p;
    }
}

TEST_CASE("GLO on example 1 waits for t5 then sends in one segment") {
    const EnergyTrace trace = scenario_preset("example1");
    const RunReport r = run_glo(trace);
    REQUIRE(r.feasible);
    std::vector<Segment> active;
    for (const Segment& s : r.schedule.segments()) {
        if (s.power > 0.0) {
            active.push_back(s);
        } else {
            CHECK(s.end() <= 62.0 + 1e-12);
        }
    }
    REQUIRE(active.size() == 1);
    CHECK(active[0].start == doctest::Approx(62.0));
    CHECK(active[0].duration == doctest::Approx(63.2).epsilon(0.001));
    CHECK(r.completion_time == doctest::Approx(125.2).epsilon(0.001));
}

TEST_CASE("GLO on example 2 starts at t5") {
    const RunReport r = run_glo(scenario_preset("example2"));
    const auto steps = transmitting(r);
    REQUIRE(steps.size() == 4);
    CHECK(steps[0].time == 5.0);
    CHECK(steps[0].estimate == doctest::Approx(352.8).epsilon(0.001));
    CHECK(steps[3].estimate == doctest::Approx(8.4).epsilon(0.01));
    CHECK(r.completion_time == doctest::Approx(8.0 + steps[3].estimate));
    for (const Checkpoint& c : r.diagnostics) {
        if (c.time < 5.0) {
            CHECK(c.power == 0.0);
        }
    }
}

TEST_CASE("GLO and Lazy coincide when the first harvest suffices") {
    const EnergyTrace trace({{0.0, 5.0}, {2.0, 1.0}, {3.0, 4.0}}, 6.0, ChannelModel::siso());
    const RunReport lazy = run_lazy(trace);
    const RunReport glo = run_glo(trace);
    CHECK(lazy.completion_time == glo.completion_time);
    CHECK(lazy.schedule.segments().size() == glo.schedule.segments().size());
}

TEST_CASE("GLO on a trace that can never finish") {
    const EnergyTrace trace({{0.0, 1.0}, {1.0, 0.5}}, 5.0, ChannelModel::siso());
    const RunReport r = run_glo(trace);
    CHECK_FALSE(r.feasible);
    CHECK(std::isinf(r.completion_time));
}

TEST_CASE("alpha policy") {
    const EnergyTrace sigma1({{0.0, 2.0}, {1.0, 4.0}}, 2.8, ChannelModel::siso());
    const EnergyTrace sigma2({{0.0, 2.0}}, 2.8, ChannelModel::siso());

    CHECK(run_alpha_policy(sigma1, 1.0, 1.0).completion_time ==
          doctest::Approx(offline_schedule(sigma1).completion_time).epsilon(1e-9));

    const double sent = reference_rate(ChannelKind::siso, 1.0, 2.0 * 0.0308);
    const double expected = 1.0 + *reference_completion(ChannelKind::siso, 2.8 - sent, 2.0 * (1 - 0.0308));
    CHECK(run_alpha_policy(sigma2, 0.0308, 1.0).completion_time ==
          doctest::Approx(expected).epsilon(1e-8));
    CHECK(expected == doctest::Approx(32.46).epsilon(1e-3));

    const RunReport idle = run_alpha_policy(sigma2, 0.0, 1.0);
    CHECK(idle.completion_time == doctest::Approx(1.0 + 32.46).epsilon(1e-3));

    const RunReport spent = run_alpha_policy(sigma2, 1.0, 1.0);
    CHECK_FALSE(spent.feasible);

    CHECK_THROWS_AS(run_alpha_policy(sigma2, 1.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(run_alpha_policy(sigma2, 0.5, 0.0), std::invalid_argument);
}

namespace {

// Records the order in which arrivals are revealed and decisions are taken.
struct Sentinel final : ArrivalSource {
    explicit Sentinel(std::vector<Arrival> a, std::vector<std::string>& log)
        : arrivals(std::move(a)), events(log) {}
    std::optional<Arrival> next() override {
        events.push_back("fetch " + std::to_string(index));
        if (index >= arrivals.size()) {
            return std::nullopt;
        }
        return arrivals[index++];
    }
    std::vector<Arrival> arrivals;
    std::vector<std::string>& events;
    std::size_t index = 0;
};

struct Recording final : OnlinePolicy {
    Recording(OnlinePolicy& inner, std::vector<std::string>& log,
              const std::vector<Arrival>& truth)
        : inner(inner), events(log), truth(truth) {}
    const char* name() const override { return inner.name(); }
    Decision decide(const OnlineState& state, ChannelModel channel) override {
        events.push_back("decide " + std::to_string(state.arrivals_seen));
        double seen = 0.0;
        for (const Arrival& a : truth) {
            if (a.time <= state.now) {
                seen += a.energy;
            }
        }
        CHECK(state.harvested == doctest::Approx(seen));
        return inner.decide(state, channel);
    }
    OnlinePolicy& inner;
    std::vector<std::string>& events;
    const std::vector<Arrival>& truth;
};

}  // namespace

TEST_CASE("online runners only learn an arrival after deciding at the previous one") {
    const std::vector<Arrival> arrivals{{0.0, 3.0}, {1.0, 1.0}, {2.5, 2.0}, {4.0, 1.0}};
    for (int which = 0; which < 3; ++which) {
        std::vector<std::string> log;
        Sentinel source(arrivals, log);
        LazyPolicy lazy;
        GloPolicy glo;
        AlphaPolicy alpha(0.3, 1.0);
        OnlinePolicy& inner = which == 0 ? static_cast<OnlinePolicy&>(lazy)
                              : which == 1 ? static_cast<OnlinePolicy&>(glo)
                                           : static_cast<OnlinePolicy&>(alpha);
        Recording policy(inner, log, arrivals);
        const RunReport r = run_online(policy, source, 5.0, ChannelModel::siso());
        REQUIRE(r.feasible);

        // fetch k (k >= 1) must be preceded by a decision that had seen k arrivals
        std::size_t max_seen = 0;
        bool any_decision = false;
        for (const std::string& e : log) {
            if (e.rfind("decide ", 0) == 0) {
                max_seen = std::max<std::size_t>(max_seen, std::stoul(e.substr(7)));
                any_decision = true;
            } else {
                const std::size_t k = std::stoul(e.substr(6));
                if (k > 0) {
                    CHECK(any_decision);
                    CHECK(max_seen >= k);
                }
            }
        }
    }
}

TEST_CASE("lazy re-estimation never postpones the finish") {
    std::mt19937_64 rng(99);
    RandomTraceParams params;
    params.max_load = 0.9;
    int checked = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        const EnergyTrace trace = random_trace(rng, params);
        if (!lazy_applicable(trace)) {
            continue;
        }
        const RunReport r = run_lazy(trace);
        double previous = std::numeric_limits<double>::infinity();
        for (const Checkpoint& c : r.diagnostics) {
            const double finish = c.time + c.estimate;
            CHECK(finish <= previous * (1.0 + 1e-9) + 1e-9);
            previous = finish;
        }
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("theta over phi stays above one while offline holds constant power") {
    std::mt19937_64 rng(4242);
    RandomTraceParams params;
    int case_one = 0;
    for (int trial = 0; trial < 4000; ++trial) {
        const EnergyTrace trace = random_trace(rng, params);
        if (!lazy_applicable(trace)) {
            continue;
        }
        const RunReport offline = offline_schedule(trace);
        std::size_t active = 0;
        for (const Segment& s : offline.schedule.segments()) {
            active += s.power > 0.0;
        }
        if (active != 1) {
            continue;
        }
        ++case_one;
        const RunReport lazy = run_lazy(trace);
        for (const RatioDiagnostic& d : ratio_diagnostics(trace, lazy, offline)) {
            CHECK(d.theta / d.phi >= 1.0 - 1e-9);
        }
    }
    CHECK(case_one > 50);
}

TEST_CASE("every online schedule is energy neutral and GLO stays under twice offline") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 1000; ++trial) {
        RandomTraceParams params;
        params.channel = trial % 2 ? ChannelModel::gmac() : ChannelModel::siso();
        const EnergyTrace trace = random_trace(rng, params);
        const RunReport offline = offline_schedule(trace);
        const RunReport glo = run_glo(trace);
        REQUIRE(glo.feasible);
        CHECK(verify_energy_neutrality(glo.schedule, trace).ok);
        CHECK(glo.completion_time < 2.0 * offline.completion_time);
        CHECK(bits_delivered(glo.schedule, trace.channel(), glo.completion_time) ==
              doctest::Approx(trace.bits()).epsilon(1e-6));
        if (lazy_applicable(trace)) {
            const RunReport lazy = run_lazy(trace);
            CHECK(verify_energy_neutrality(lazy.schedule, trace).ok);
            CHECK(lazy.completion_time < 2.0 * offline.completion_time);
        }
        const double horizon = trace.size() > 1 ? trace[1].time : 1.0;
        const RunReport alpha = run_alpha_policy(trace, 0.5, horizon);
        CHECK(verify_energy_neutrality(alpha.schedule, trace).ok);

        // GLO idles before it fires and never idles after
        bool fired = false;
        for (const Segment& s : glo.schedule.segments()) {
            if (s.power > 0.0) {
                fired = true;
            } else {
                CHECK_FALSE(fired);
            }
        }
    }
}

TEST_CASE("alpha one drains at the horizon without stalling") {
    const EnergyTrace trace({{0.0, 0.14443583023246062}, {7.5925351934621652, 0.18829128894586544}},
                            0.31528275612191287, ChannelModel::siso());
    const double beta = offline_energy_fraction(trace, trace[1].time);
    CHECK(beta <= 1.0);
    const RunReport r = run_alpha_policy(trace, beta, trace[1].time);
    CHECK(r.feasible);
    CHECK(verify_energy_neutrality(r.schedule, trace));
    CHECK(r.completion_time >= offline_schedule(trace).completion_time);
}
