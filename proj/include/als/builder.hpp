#pragma once

#include <unordered_map>
#include <vector>

#include "als/aig.hpp"

namespace als {

// Incremental AIG construction with constant folding and structural hashing.
class AigBuilder {
public:
    explicit AigBuilder(uint32_t num_pis) : net_(num_pis) {}

    Literal constant(bool one) const { return Literal::constant(one); }
    Literal pi(uint32_t i) const { return Literal::of(i + 1); }

    Literal and_(Literal a, Literal b) {
        if (a.value > b.value) std::swap(a, b);
        if (a.is_const(false) || a == !b) return Literal::constant(false);
        if (a.is_const(true) || a == b) return b;
        uint64_t key = (uint64_t{a.value} << 32) | b.value;
        auto it = hash_.find(key);
        if (it != hash_.end()) return Literal::of(it->second);
        Var v = net_.add_and(b, a);  // larger literal first
        hash_.emplace(key, v);
        return Literal::of(v);
    }

    Literal or_(Literal a, Literal b) { return !and_(!a, !b); }
    Literal xor_(Literal a, Literal b) { return !and_(!and_(a, b), !and_(!a, !b)); }
    Literal mux(Literal sel, Literal then_, Literal else_) {
        return or_(and_(sel, then_), and_(!sel, else_));
    }

    void po(Literal lit) { net_.add_po(lit); }

    AigNetwork take() { return std::move(net_); }

private:
    AigNetwork net_;
    std::unordered_map<uint64_t, Var> hash_;
};

}  // namespace als
