#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace finsp {

// Thrown on invalid input data: inconsistent presentations, non-commuting
// squares, unknown point ids, backend mismatches, and the like.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

enum class Backend { ZConst, FinDimQ, GradedMonomial };

inline const char* backend_name(Backend b) {
    switch (b) {
        case Backend::ZConst: return "z";
        case Backend::FinDimQ: return "q";
        case Backend::GradedMonomial: return "graded";
    }
    return "?";
}

// Three-valued answer for questions that admit an honest "don't know".
enum class Tri { Yes, No, Unknown };

// Degree box for the graded backend: one [lo,hi] interval per variable.
// Verdicts computed degreewise are only certified inside this box.
struct Window {
    std::vector<std::pair<long, long>> box;

    bool empty() const { return box.empty(); }
    std::string str() const {
        std::string s = "[";
        for (size_t i = 0; i < box.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(box[i].first) + ".." + std::to_string(box[i].second);
        }
        return s + "]";
    }
    // All lattice points of the box, lexicographic.
    std::vector<std::vector<long>> lattice() const;
};

enum class VerdictKind { Yes, No, Unknown, WindowYes };

inline const char* verdict_name(VerdictKind k) {
    switch (k) {
        case VerdictKind::Yes: return "Yes";
        case VerdictKind::No: return "No";
        case VerdictKind::Unknown: return "Unknown";
        case VerdictKind::WindowYes: return "WindowYes";
    }
    return "?";
}

// Result of a decision procedure. `rule` names the criterion that concluded,
// `witness` names the smallest failing datum when kind == No.
struct Verdict {
    VerdictKind kind = VerdictKind::Unknown;
    std::string rule;
    std::string witness;
    std::optional<Window> window;

    bool yes() const { return kind == VerdictKind::Yes || kind == VerdictKind::WindowYes; }
    bool no() const { return kind == VerdictKind::No; }

    static Verdict yes_by(const std::string& rule) { return {VerdictKind::Yes, rule, "", {}}; }
    static Verdict window_yes(const std::string& rule, const Window& w) {
        return {VerdictKind::WindowYes, rule, "", w};
    }
    static Verdict no_with(const std::string& rule, const std::string& witness) {
        return {VerdictKind::No, rule, witness, {}};
    }
    static Verdict unknown(const std::string& rule) { return {VerdictKind::Unknown, rule, "", {}}; }
};

}  // namespace finsp
