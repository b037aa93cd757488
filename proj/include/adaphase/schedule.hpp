#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace adaphase {

/// M identical measurements at every step.
struct FixedRepetitions {
    int64_t m = 1;
    bool operator==(const FixedRepetitions&) const = default;
};

/// M_n = n + 1 measurements at step n.
struct GrowingRepetitions {
    bool operator==(const GrowingRepetitions&) const = default;
};

/// Three measurements per step; the pdf is updated twice with the majority bit.
struct MajorityVoteRepetitions {
    bool operator==(const MajorityVoteRepetitions&) const = default;
};

using RepetitionPolicy = std::variant<FixedRepetitions, GrowingRepetitions, MajorityVoteRepetitions>;

struct ScheduleStep {
    int64_t index;          // n
    int64_t time_multiple;  // t_n = 2^{N-n}
    int64_t measurements;   // physical measurements at this step
};

/// The exponential interrogation schedule t_n = 2^{N-n}, n = 0..N, together
/// with the per-step repetition counts.
struct Schedule {
    int64_t levels = 0;  // N
    RepetitionPolicy policy = FixedRepetitions{1};
    std::vector<ScheduleStep> steps;

    /// Total interrogation time in units of the base time.
    int64_t total_time() const {
        int64_t total = 0;
        for (const auto& s : steps) {
            total += s.measurements * s.time_multiple;
        }
        return total;
    }
};

inline int64_t measurements_per_step(const RepetitionPolicy& policy, int64_t step_index) {
    return std::visit(
        [step_index](const auto& p) -> int64_t {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, FixedRepetitions>) {
                return p.m;
            } else if constexpr (std::is_same_v<T, GrowingRepetitions>) {
                return step_index + 1;
            } else {
                return 3;
            }
        },
        policy);
}

inline Schedule make_schedule(int64_t levels, RepetitionPolicy policy) {
    if (levels < 0) {
        throw std::invalid_argument("schedule levels must be >= 0");
    }
    if (levels > 40) {
        throw std::invalid_argument("schedule levels above 40 overflow the time accounting");
    }
    if (const auto* fixed = std::get_if<FixedRepetitions>(&policy); fixed && fixed->m < 1) {
        throw std::invalid_argument("fixed repetition count must be >= 1");
    }
    Schedule sched{levels, policy, {}};
    sched.steps.reserve(static_cast<size_t>(levels) + 1);
    for (int64_t n = 0; n <= levels; ++n) {
        sched.steps.push_back({n, int64_t{1} << (levels - n), measurements_per_step(policy, n)});
    }
    return sched;
}

/// Canonical policy spelling: m1, m2, mfixed:K, growing, majority3.
inline std::string policy_to_string(const RepetitionPolicy& policy) {
    return std::visit(
        [](const auto& p) -> std::string {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, FixedRepetitions>) {
                if (p.m == 1) return "m1";
                if (p.m == 2) return "m2";
                return "mfixed:" + std::to_string(p.m);
            } else if constexpr (std::is_same_v<T, GrowingRepetitions>) {
                return "growing";
            } else {
                return "majority3";
            }
        },
        policy);
}

inline RepetitionPolicy parse_policy(const std::string& text) {
    if (text == "m1") return FixedRepetitions{1};
    if (text == "m2") return FixedRepetitions{2};
    if (text == "growing") return GrowingRepetitions{};
    if (text == "majority3") return MajorityVoteRepetitions{};
    if (text.rfind("mfixed:", 0) == 0) {
        const std::string count = text.substr(7);
        size_t used = 0;
        int64_t m = 0;
        try {
            m = std::stoll(count, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("unparseable repetition count in policy '" + text + "'");
        }
        if (used != count.size() || m < 1) {
            throw std::invalid_argument("invalid repetition count in policy '" + text + "'");
        }
        return FixedRepetitions{m};
    }
    throw std::invalid_argument("unknown policy '" + text +
                                "' (expected m1|m2|mfixed:K|growing|majority3)");
}

}  // namespace adaphase
