#include "ehsched/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ehsched {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class Search {
public:
    Search(const EnergyTrace& trace, std::size_t power_grid, std::size_t time_grid, double tail)
        : trace_(trace), power_grid_(power_grid), time_grid_(time_grid), tail_(tail),
          target_(trace.bits() * (1.0 - 1e-12)) {}

    void run() { visit(0, 0.0, 0.0); }

    double best() const { return best_; }
    double best_step() const { return best_step_; }

private:
    // `held` excludes the harvest at `index`; `sent` is bits delivered so far.
    void visit(std::size_t index, double held, double sent) {
        const auto arrivals = trace_.arrivals();
        const double start = arrivals[index].time;
        held += arrivals[index].energy;
        const bool last = index + 1 == arrivals.size();
        const double window_end = last ? start + tail_ : arrivals[index + 1].time;

        finish_from(index, held, sent);
        if (last) {
            return;
        }

        const double span = window_end - start;
        if (start + span >= best_) {
            return;
        }
        // One power held across several intervals, running dry exactly as
        // arrival j lands. The fraction grid only reaches these on a lucky cell.
        double pooled = held;
        for (std::size_t j = index + 2; j < arrivals.size() && arrivals[j].time < best_; ++j) {
            pooled += arrivals[j - 1].energy;
            const double length = arrivals[j].time - start;
            const double power = pooled / length;
            if (neutral_until(index, j - 1, held, power)) {
                visit(j, 0.0, sent + rate(trace_.channel(), length, power));
            }
        }
        for (std::size_t i = 0; i <= power_grid_; ++i) {
            const double spent = held * static_cast<double>(i) / static_cast<double>(power_grid_);
            const double bits = sent + rate(trace_.channel(), span, spent / span);
            visit(index + 1, held - spent, bits);
        }
    }

    // Constant `power` from arrival `from` never overdraws at arrivals up to `to`.
    bool neutral_until(std::size_t from, std::size_t to, double held, double power) const {
        const auto arrivals = trace_.arrivals();
        double banked = held;
        for (std::size_t i = from + 1; i <= to; ++i) {
            if (power * (arrivals[i].time - arrivals[from].time) > banked * (1.0 + 1e-12)) {
                return false;
            }
            banked += arrivals[i].energy;
        }
        return true;
    }

    // Last segment: one power from `index` onward spending `held` plus the
    // harvests that land before its gridded end time. Later arrivals only count
    // if the constant power never overdraws before they land.
    void finish_from(std::size_t index, double held, double sent) {
        const auto arrivals = trace_.arrivals();
        const double start = arrivals[index].time;
        double energy = held;
        for (std::size_t j = index; j < arrivals.size(); ++j) {
            if (j > index) {
                energy += arrivals[j].energy;
            }
            const double lo_time = arrivals[j].time;
            if (lo_time >= best_) {
                return;
            }
            const double hi_time =
                j + 1 < arrivals.size() ? arrivals[j + 1].time : arrivals.back().time + tail_;
            const double step = (hi_time - lo_time) / static_cast<double>(time_grid_);
            const auto ok = [&](std::size_t k) {
                const double length = lo_time + step * static_cast<double>(k) - start;
                const double power = energy / length;
                return neutral_until(index, j, held, power) && sent + rate(trace_.channel(), length, power) >= target_;
            };
            if (!ok(time_grid_)) {
                continue;
            }
            std::size_t lo = 0;  // the window's opening instant is covered by the previous one
            std::size_t hi = time_grid_;
            while (hi - lo > 1) {
                const std::size_t mid = lo + (hi - lo) / 2;
                (ok(mid) ? hi : lo) = mid;
            }
            const double end = lo_time + step * static_cast<double>(hi);
            if (end < best_) {
                best_ = end;
                best_step_ = step;
            }
            return;
        }
    }

    const EnergyTrace& trace_;
    std::size_t power_grid_;
    std::size_t time_grid_;
    double tail_;
    double target_;
    double best_ = kInf;
    double best_step_ = 0.0;
};

}  // namespace

std::optional<OracleResult> oracle_min_time(const EnergyTrace& trace, std::size_t power_grid,
                                            std::size_t time_grid) {
    if (trace.size() > kOracleMaxArrivals) {
        throw std::invalid_argument("oracle: at most four arrivals are supported");
    }
    if (power_grid < kOracleMinGrid || time_grid < kOracleMinGrid) {
        throw std::invalid_argument("oracle: grids must have at least 16 steps");
    }
    if (trace.bits() == 0.0) {
        return OracleResult{0.0, 0.0};
    }
    const auto pooled = completion_time(trace.channel(), trace.bits(), trace.total_energy());
    if (!pooled) {
        return std::nullopt;
    }
    Search search(trace, power_grid, time_grid, 2.0 * *pooled);
    search.run();
    if (!std::isfinite(search.best())) {
        return std::nullopt;
    }
    return OracleResult{search.best(), search.best_step()};
}

bool oracle_certify(const EnergyTrace& trace, const RunReport& claimed, double tolerance,
                    std::size_t power_grid, std::size_t time_grid) {
    if (!claimed.feasible || !std::isfinite(claimed.completion_time)) {
        return false;
    }
    if (!verify_energy_neutrality(claimed.schedule, trace)) {
        return false;
    }
    const double delivered =
        bits_delivered(claimed.schedule, trace.channel(), claimed.completion_time);
    if (delivered < trace.bits() * (1.0 - 1e-6)) {
        return false;
    }
    const auto oracle = oracle_min_time(trace, power_grid, time_grid);
    if (!oracle) {
        return false;
    }
    return claimed.completion_time <= oracle->time + tolerance;
}

}  // namespace ehsched
