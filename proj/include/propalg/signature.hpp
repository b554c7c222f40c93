#ifndef PROPALG_SIGNATURE_HPP
#define PROPALG_SIGNATURE_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "propalg/error.hpp"

namespace propalg {

struct OpSig {
    std::string name;
    unsigned arity = 0;

    friend bool operator==(const OpSig& x, const OpSig& y) {
        return x.name == y.name && x.arity == y.arity;
    }
};

/// An operation signature: named operations with fixed arities.
/// Declaration order is kept and used as the canonical sweep order.
class Signature {
public:
    Signature() = default;

    Signature(std::initializer_list<OpSig> ops) : Signature(std::vector<OpSig>(ops)) {}

    explicit Signature(std::vector<OpSig> ops) : ops_(std::move(ops)) {
        for (std::size_t i = 0; i < ops_.size(); ++i)
            for (std::size_t j = i + 1; j < ops_.size(); ++j)
                if (ops_[i].name == ops_[j].name)
                    throw SignatureError("duplicate operation name '" + ops_[i].name + "'");
    }

    const std::vector<OpSig>& ops() const { return ops_; }
    std::size_t size() const { return ops_.size(); }
    bool empty() const { return ops_.empty(); }

    std::optional<std::size_t> index_of(const std::string& name) const {
        for (std::size_t i = 0; i < ops_.size(); ++i)
            if (ops_[i].name == name) return i;
        return std::nullopt;
    }

    const OpSig& at(std::size_t i) const { return ops_.at(i); }

    /// Signatures match when they contain the same (name, arity) pairs,
    /// regardless of declaration order.
    bool same_as(const Signature& other) const {
        if (ops_.size() != other.ops_.size()) return false;
        auto key = [](const OpSig& o) { return std::pair(o.name, o.arity); };
        std::vector<std::pair<std::string, unsigned>> a, b;
        for (const auto& o : ops_) a.push_back(key(o));
        for (const auto& o : other.ops_) b.push_back(key(o));
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return a == b;
    }

    friend bool operator==(const Signature& x, const Signature& y) {
        return x.ops_ == y.ops_;
    }

private:
    std::vector<OpSig> ops_;
};

} // namespace propalg

#endif
