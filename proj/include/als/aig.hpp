#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace als {

// Variable index. 0 is the constant-false variable, 1..I are PIs,
// I+1..I+A are AND nodes.
using Var = uint32_t;

// AIGER-style literal: variable index = value/2, complemented iff value is odd.
struct Literal {
    uint32_t value = 0;

    Literal() = default;
    constexpr explicit Literal(uint32_t v) : value(v) {}

    static constexpr Literal constant(bool one) { return Literal(one ? 1u : 0u); }
    static constexpr Literal of(Var v, bool complemented = false) {
        return Literal(2 * v + (complemented ? 1u : 0u));
    }

    Var var() const { return value >> 1; }
    bool complemented() const { return value & 1u; }
    bool is_const(bool one) const { return value == (one ? 1u : 0u); }
    bool is_constant() const { return value <= 1u; }

    Literal operator!() const { return Literal(value ^ 1u); }
    Literal xor_complement(bool c) const { return Literal(value ^ (c ? 1u : 0u)); }

    auto operator<=>(const Literal&) const = default;
};

struct AndNode {
    Literal left;
    Literal right;
};

// Local approximate change: replace the target signal's fanouts by a constant
// or by another signal (optionally complemented).
enum class LacKind : uint8_t { Const0, Const1, Substitute };

struct Lac {
    Var target = 0;
    LacKind kind = LacKind::Const0;
    Literal source{};  // meaningful only for Substitute

    // Maximum-error lower bound from simulation; unset until estimated.
    std::optional<mpz_class> lb;
    // Number of pattern columns the lb was computed over (audit trail).
    uint64_t lb_columns = 0;
    // Estimated area gain: MFFC size of the target (0 for PIs).
    uint32_t gain = 0;

    Literal replacement_literal() const {
        switch (kind) {
            case LacKind::Const0: return Literal::constant(false);
            case LacKind::Const1: return Literal::constant(true);
            case LacKind::Substitute: return source;
        }
        return Literal::constant(false);
    }

    // Deterministic encoding of the replacement, used as a sort tie-break.
    uint64_t replacement_code() const {
        switch (kind) {
            case LacKind::Const0: return 0;
            case LacKind::Const1: return 1;
            case LacKind::Substitute: return 2 + uint64_t{source.value};
        }
        return 0;
    }
};

// Combinational AIG. Immutable once built (mutating operations return new
// networks), so it is safe to share read-only across workers.
//
// Invariant: both fanin variable indices of every AND node are strictly
// smaller than the node's own index, so variable order is a topological order.
class AigNetwork {
public:
    AigNetwork() = default;
    explicit AigNetwork(uint32_t num_pis) {
        for (uint32_t i = 0; i < num_pis; ++i) add_pi();
    }

    uint32_t num_pis() const { return num_pis_; }
    uint32_t and_count() const { return static_cast<uint32_t>(ands_.size()); }
    uint32_t po_count() const { return static_cast<uint32_t>(pos_.size()); }
    uint32_t num_vars() const { return 1 + num_pis_ + and_count(); }

    bool is_const_var(Var v) const { return v == 0; }
    bool is_pi(Var v) const { return v >= 1 && v <= num_pis_; }
    bool is_and(Var v) const { return v > num_pis_ && v < num_vars(); }

    Var and_var(uint32_t i) const { return 1 + num_pis_ + i; }
    uint32_t and_index(Var v) const {
        assert(is_and(v));
        return v - num_pis_ - 1;
    }
    const AndNode& node(Var v) const { return ands_[and_index(v)]; }
    std::span<const AndNode> ands() const { return ands_; }
    std::span<const Literal> pos() const { return pos_; }
    Literal po(uint32_t k) const { return pos_[k]; }

    Var add_pi() {
        assert(ands_.empty() && "PIs must come before AND nodes");
        ++num_pis_;
        Var v = num_pis_;
        ensure_uid(v);
        return v;
    }

    Var add_and(Literal left, Literal right) {
        Var v = num_vars();
        assert(left.var() < v && right.var() < v && "fanin must precede node");
        ands_.push_back({left, right});
        ensure_uid(v);
        return v;
    }

    void add_po(Literal lit) {
        assert(lit.var() < num_vars());
        pos_.push_back(lit);
    }

    // Persistent identity of a variable; survives the renumbering done by
    // apply_lac and cleanup so blacklists can track nodes across iterations.
    uint64_t uid(Var v) const { return uid_[v]; }
    void set_uid(Var v, uint64_t uid) { uid_[v] = uid; }

    std::string name;
    std::string comment;                // comment section as read from file
    std::vector<std::string> symbols;   // AIGER symbol-table lines, verbatim

private:
    void ensure_uid(Var v) {
        if (uid_.empty()) uid_.push_back(0);
        assert(uid_.size() == v);
        uid_.push_back(v);
    }

    uint32_t num_pis_ = 0;
    std::vector<AndNode> ands_;
    std::vector<Literal> pos_;
    std::vector<uint64_t> uid_{0};
};

// Transitive fanout of a node: reachable variables plus reached PO indices.
struct Tfo {
    std::vector<Var> vars;          // sorted ascending; excludes the root
    std::vector<uint32_t> po_indices;
    std::vector<char> var_mask;     // size num_vars; var_mask[root] = 0

    bool contains(Var v) const { return var_mask[v] != 0; }
};

// Result of a structural edit: the new network plus old-variable -> new-variable
// map (total; the edited target stays in the network, possibly dangling).
struct ApplyResult {
    AigNetwork net;
    std::vector<Var> var_map;
};

// Result of cleanup: old variable -> new literal (folding may map a variable
// to a constant or a complemented survivor); dead variables map to nullopt.
struct CleanupResult {
    AigNetwork net;
    std::vector<std::optional<Literal>> lit_map;
};

// Topological order of all variables: PIs first, then AND nodes; every node
// after both fanins. With the index invariant this is just 1..num_vars-1.
std::vector<Var> topo_order(const AigNetwork& net);

// Variables reachable from POs (constant var excluded). mask[v] != 0 iff live.
std::vector<char> live_mask(const AigNetwork& net);

Tfo tfo(const AigNetwork& net, Var node);

// Number of AND nodes that become dangling if the node's fanouts are
// disconnected, the node itself included.
uint32_t mffc_size(const AigNetwork& net, Var node);

// mffc_size for every variable at once (0 for PIs and the constant).
std::vector<uint32_t> all_mffc_sizes(const AigNetwork& net);

// True iff the lac is a substitution whose source lies in TFO(target) or is
// the target itself. Constant LACs never introduce loops.
bool introduces_loop(const AigNetwork& net, const Lac& lac);

ApplyResult apply_lac_mapped(const AigNetwork& net, const Lac& lac);
AigNetwork apply_lac(const AigNetwork& net, const Lac& lac);

CleanupResult cleanup_mapped(const AigNetwork& net);
AigNetwork cleanup(const AigNetwork& net);

}  // namespace als
