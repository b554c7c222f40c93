#ifndef PROPALG_VERDICT_HPP
#define PROPALG_VERDICT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace propalg {

/// How much the answer is allowed to claim.  Exact verdicts hold
/// unconditionally; window-bounded ones quantified only over the integer
/// window; witness-depth-bounded ones additionally searched terms only up
/// to the relation's depth (a "false" then means "no witness found").
enum class Qualifier { Exact, WindowBounded, WitnessDepthBounded };

inline const char* qualifier_name(Qualifier q) {
    switch (q) {
    case Qualifier::Exact: return "exact";
    case Qualifier::WindowBounded: return "window-bounded";
    default: return "witness-depth-bounded";
    }
}

/// The weaker of two qualifiers (depth-bounded < window-bounded < exact).
inline Qualifier combine(Qualifier a, Qualifier b) {
    auto rank = [](Qualifier q) { return q == Qualifier::Exact ? 0 : q == Qualifier::WindowBounded ? 1 : 2; };
    return rank(a) >= rank(b) ? a : b;
}

/// Named witness slots, in presentation order (e.g. a=1 b=2 c=3 d=4).
struct WitnessTuple {
    std::vector<std::pair<std::string, std::string>> slots;

    void add(std::string name, std::string value) {
        slots.emplace_back(std::move(name), std::move(value));
    }
    std::string to_string() const {
        std::string s;
        for (const auto& [k, v] : slots) {
            if (!s.empty()) s += " ";
            s += k + "=" + v;
        }
        return s;
    }
    friend bool operator==(const WitnessTuple& x, const WitnessTuple& y) {
        return x.slots == y.slots;
    }
};

/// Outcome of a decision procedure.  A witness is attached exactly when
/// the property fails.  `swept` counts the canonical prefix of the tuple
/// space that the answer depends on, so it is identical across thread
/// counts.
struct Verdict {
    bool holds = false;
    Qualifier qualifier = Qualifier::Exact;
    std::optional<WitnessTuple> witness;
    std::uint64_t swept = 0;
    std::string note;

    static Verdict pass(Qualifier q, std::uint64_t swept = 0, std::string note = {}) {
        Verdict v;
        v.holds = true;
        v.qualifier = q;
        v.swept = swept;
        v.note = std::move(note);
        return v;
    }

    static Verdict fail(WitnessTuple w, Qualifier q, std::uint64_t swept = 0,
                        std::string note = {}) {
        Verdict v;
        v.holds = false;
        v.qualifier = q;
        v.witness = std::move(w);
        v.swept = swept;
        v.note = std::move(note);
        return v;
    }
};

} // namespace propalg

#endif
