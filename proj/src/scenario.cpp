#include "ehsched/scenario.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include "ehsched/errors.hpp"

namespace ehsched {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_words(std::string_view s) {
    std::vector<std::string_view> words;
    std::size_t pos = 0;
    while (pos < s.size()) {
        const auto begin = s.find_first_not_of(" \t", pos);
        if (begin == std::string_view::npos) {
            break;
        }
        auto end = s.find_first_of(" \t", begin);
        if (end == std::string_view::npos) {
            end = s.size();
        }
        words.push_back(s.substr(begin, end - begin));
        pos = end;
    }
    return words;
}

std::optional<double> to_double(std::string_view s) {
    if (s == "inf") {
        return std::numeric_limits<double>::infinity();
    }
    if (s == "nan") {
        return std::numeric_limits<double>::quiet_NaN();
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return value;
}

double number(std::string_view s, std::size_t line, std::string_view what) {
    const auto v = to_double(s);
    if (!v || !std::isfinite(*v)) {
        throw ParseError(line, std::string(what) + ": expected a number, got '" +
                                   std::string(s) + "'");
    }
    return *v;
}

// key=value pairs after the directive word.
std::map<std::string, std::string_view, std::less<>> fields(
    const std::vector<std::string_view>& words, std::size_t line) {
    std::map<std::string, std::string_view, std::less<>> out;
    for (std::size_t i = 1; i < words.size(); ++i) {
        const auto eq = words[i].find('=');
        if (eq == std::string_view::npos || eq == 0) {
            throw ParseError(line, "expected key=value, got '" + std::string(words[i]) + "'");
        }
        std::string key(words[i].substr(0, eq));
        if (!out.emplace(key, words[i].substr(eq + 1)).second) {
            throw ParseError(line, "duplicate field '" + key + "'");
        }
    }
    return out;
}

std::string_view require(const std::map<std::string, std::string_view, std::less<>>& f,
                         std::string_view key, std::size_t line) {
    const auto it = f.find(key);
    if (it == f.end()) {
        throw ParseError(line, "missing field '" + std::string(key) + "'");
    }
    return it->second;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            nl = text.size();
        }
        ++line_no;
        std::string_view line = text.substr(pos, nl - pos);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (!line.empty()) {
            fn(line_no, split_words(line));
        }
        pos = nl + 1;
    }
}

EnergyTrace make_trace(std::vector<Arrival> arrivals, double bits, ChannelModel channel,
                       std::string label) {
    return EnergyTrace(std::move(arrivals), bits, channel, std::move(label));
}

}  // namespace

std::string fixed9(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", value);
    std::string s(buf);
    if (s == "-0.000000000") {
        s.erase(0, 1);
    }
    return s;
}

EnergyTrace parse_scenario(std::string_view text) {
    std::optional<ChannelModel> channel;
    std::optional<double> bits;
    std::string label;
    std::vector<Arrival> arrivals;

    for_each_line(text, [&](std::size_t line, const std::vector<std::string_view>& words) {
        const std::string_view key = words[0];
        if (key == "arrival") {
            const auto f = fields(words, line);
            for (const auto& [name, value] : f) {
                if (name != "t" && name != "e") {
                    throw ParseError(line, "unknown arrival field '" + name + "'");
                }
            }
            const double t = number(require(f, "t", line), line, "arrival time");
            const double e = number(require(f, "e", line), line, "arrival energy");
            if (t < 0.0) {
                throw ParseError(line, "arrival time must be >= 0");
            }
            if (!(e > 0.0)) {
                throw ParseError(line, "arrival energy must be > 0");
            }
            if (!arrivals.empty() && !(t > arrivals.back().time)) {
                throw ParseError(line, "arrival times must be strictly increasing");
            }
            arrivals.push_back({t, e});
            return;
        }
        if (words.size() != 2) {
            throw ParseError(line, "'" + std::string(key) + "' takes exactly one value");
        }
        if (key == "channel") {
            if (channel) {
                throw ParseError(line, "duplicate 'channel'");
            }
            const auto kind = parse_channel_kind(words[1]);
            if (!kind) {
                throw ParseError(line, "channel must be 'siso' or 'gmac'");
            }
            channel = ChannelModel{*kind};
        } else if (key == "bits") {
            if (bits) {
                throw ParseError(line, "duplicate 'bits'");
            }
            bits = number(words[1], line, "bits");
            if (!(*bits > 0.0)) {
                throw ParseError(line, "bits must be > 0");
            }
        } else if (key == "label") {
            label = std::string(words[1]);
        } else {
            throw ParseError(line, "unknown directive '" + std::string(key) + "'");
        }
    });

    if (!channel) {
        throw ParseError(0, "scenario is missing 'channel'");
    }
    if (!bits) {
        throw ParseError(0, "scenario is missing 'bits'");
    }
    if (arrivals.empty()) {
        throw ParseError(0, "scenario has no 'arrival' lines");
    }
    return make_trace(std::move(arrivals), *bits, *channel, std::move(label));
}

EnergyTrace load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(0, "cannot open scenario '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    EnergyTrace trace = parse_scenario(buf.str());
    if (trace.label().empty()) {
        return EnergyTrace({trace.arrivals().begin(), trace.arrivals().end()}, trace.bits(),
                           trace.channel(), path);
    }
    return trace;
}

std::string format_scenario(const EnergyTrace& trace) {
    std::ostringstream out;
    if (!trace.label().empty()) {
        out << "label " << trace.label() << '\n';
    }
    out << "channel " << to_string(trace.channel().kind) << '\n';
    out << "bits " << fixed9(trace.bits()) << '\n';
    for (const Arrival& a : trace.arrivals()) {
        out << "arrival t=" << fixed9(a.time) << " e=" << fixed9(a.energy) << '\n';
    }
    return out.str();
}

EnergyTrace scenario_preset(std::string_view name) {
    if (name == "example1" || name == "example1-literal") {
        const bool gaps = name == "example1";
        std::vector<Arrival> arrivals;
        double t = 0.0;
        for (int n = 0; n <= 6; ++n) {
            if (n > 0) {
                t = gaps ? t + std::ldexp(1.0, n) : std::ldexp(1.0, n);
            }
            arrivals.push_back({t, std::ldexp(1.0, n + 1)});
        }
        return make_trace(std::move(arrivals), 100.0, ChannelModel::siso(), std::string(name));
    }
    if (name == "example2") {
        std::vector<Arrival> arrivals{{0.0, 2.0}};
        for (int n = 1; n <= 8; ++n) {
            arrivals.push_back({static_cast<double>(n), 1.0});
        }
        return make_trace(std::move(arrivals), 10.0, ChannelModel::siso(), "example2");
    }
    throw ConfigError("unknown scenario preset '" + std::string(name) + "'");
}

std::vector<std::string_view> scenario_preset_names() {
    return {"example1", "example1-literal", "example2"};
}

std::string format_report(const RunReport& report, ChannelModel channel) {
    std::ostringstream out;
    out << "algorithm " << report.algorithm << '\n';
    out << "channel " << to_string(channel.kind) << '\n';
    out << "feasible " << (report.feasible ? "true" : "false") << '\n';
    out << "completion_time " << fixed9(report.completion_time) << '\n';
    for (const Segment& seg : report.schedule.segments()) {
        out << "segment start=" << fixed9(seg.start) << " duration=" << fixed9(seg.duration)
            << " power=" << fixed9(seg.power)
            << " bits=" << fixed9(bits_delivered(report.schedule, channel, seg.end()))
            << " energy=" << fixed9(energy_used(report.schedule, seg.end())) << '\n';
    }
    for (const Checkpoint& cp : report.diagnostics) {
        out << "checkpoint time=" << fixed9(cp.time) << " energy=" << fixed9(cp.energy_remaining)
            << " bits=" << fixed9(cp.bits_remaining) << " estimate=" << fixed9(cp.estimate)
            << " power=" << fixed9(cp.power) << '\n';
    }
    return out.str();
}

RunReport parse_report(std::string_view text) {
    RunReport report;
    std::vector<Segment> segments;
    bool saw_algorithm = false;

    const auto field = [](const auto& f, std::string_view key, std::size_t line) {
        const auto v = to_double(require(f, key, line));
        if (!v) {
            throw ParseError(line, "field '" + std::string(key) + "' is not a number");
        }
        return *v;
    };

    for_each_line(text, [&](std::size_t line, const std::vector<std::string_view>& words) {
        const std::string_view key = words[0];
        if (key == "segment") {
            const auto f = fields(words, line);
            segments.push_back({field(f, "start", line), field(f, "duration", line),
                                field(f, "power", line)});
        } else if (key == "checkpoint") {
            const auto f = fields(words, line);
            report.diagnostics.push_back({field(f, "time", line), field(f, "energy", line),
                                          field(f, "bits", line), field(f, "estimate", line),
                                          field(f, "power", line)});
        } else if (words.size() != 2) {
            throw ParseError(line, "'" + std::string(key) + "' takes exactly one value");
        } else if (key == "algorithm") {
            report.algorithm = std::string(words[1]);
            saw_algorithm = true;
        } else if (key == "channel") {
            if (!parse_channel_kind(words[1])) {
                throw ParseError(line, "unknown channel");
            }
        } else if (key == "feasible") {
            if (words[1] != "true" && words[1] != "false") {
                throw ParseError(line, "feasible must be true or false");
            }
            report.feasible = words[1] == "true";
        } else if (key == "completion_time") {
            const auto v = to_double(words[1]);
            if (!v) {
                throw ParseError(line, "completion_time is not a number");
            }
            report.completion_time = *v;
        } else {
            throw ParseError(line, "unknown report key '" + std::string(key) + "'");
        }
    });
    if (!saw_algorithm) {
        throw ParseError(0, "report is missing 'algorithm'");
    }
    try {
        report.schedule = Schedule::from_segments(std::move(segments));
    } catch (const std::invalid_argument& e) {
        throw ParseError(0, e.what());
    }
    return report;
}

}  // namespace ehsched
