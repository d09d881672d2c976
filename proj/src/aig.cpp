#include "als/aig.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <unordered_map>

namespace als {

std::vector<Var> topo_order(const AigNetwork& net) {
    std::vector<Var> order;
    order.reserve(net.num_vars() - 1);
    for (Var v = 1; v < net.num_vars(); ++v) order.push_back(v);
    return order;
}

std::vector<char> live_mask(const AigNetwork& net) {
    std::vector<char> live(net.num_vars(), 0);
    for (Literal po : net.pos()) live[po.var()] = 1;
    // Reverse topological sweep: a node's fanins are live if it is.
    for (Var v = net.num_vars(); v-- > 1;) {
        if (!live[v] || !net.is_and(v)) continue;
        const AndNode& n = net.node(v);
        live[n.left.var()] = 1;
        live[n.right.var()] = 1;
    }
    live[0] = 0;
    return live;
}

Tfo tfo(const AigNetwork& net, Var node) {
    assert(node < net.num_vars());
    Tfo result;
    result.var_mask.assign(net.num_vars(), 0);
    for (Var v = node + 1; v < net.num_vars(); ++v) {
        if (!net.is_and(v)) continue;
        const AndNode& n = net.node(v);
        Var l = n.left.var(), r = n.right.var();
        if (l == node || r == node || result.var_mask[l] || result.var_mask[r]) {
            result.var_mask[v] = 1;
            result.vars.push_back(v);
        }
    }
    for (uint32_t k = 0; k < net.po_count(); ++k) {
        Var v = net.po(k).var();
        if (v == node || result.var_mask[v]) result.po_indices.push_back(k);
    }
    return result;
}

namespace {

// Fanout reference counts per variable from live nodes and POs; references
// held by dead cones do not pin a node.
std::vector<uint32_t> ref_counts(const AigNetwork& net, const std::vector<char>& live) {
    std::vector<uint32_t> refs(net.num_vars(), 0);
    for (uint32_t i = 0; i < net.and_count(); ++i) {
        if (!live[net.and_var(i)]) continue;
        const AndNode& n = net.ands()[i];
        ++refs[n.left.var()];
        ++refs[n.right.var()];
    }
    for (Literal po : net.pos()) ++refs[po.var()];
    return refs;
}

uint32_t deref_cone(const AigNetwork& net, std::vector<uint32_t>& refs, Var v) {
    if (!net.is_and(v)) return 0;
    uint32_t count = 1;
    const AndNode& n = net.node(v);
    for (Var f : {n.left.var(), n.right.var()}) {
        assert(refs[f] > 0);
        if (--refs[f] == 0) count += deref_cone(net, refs, f);
    }
    return count;
}

void reref_cone(const AigNetwork& net, std::vector<uint32_t>& refs, Var v) {
    if (!net.is_and(v)) return;
    const AndNode& n = net.node(v);
    for (Var f : {n.left.var(), n.right.var()}) {
        if (refs[f]++ == 0) reref_cone(net, refs, f);
    }
}

}  // namespace

uint32_t mffc_size(const AigNetwork& net, Var node) {
    if (!net.is_and(node)) return 0;
    std::vector<char> live = live_mask(net);
    if (!live[node]) return 0;
    std::vector<uint32_t> refs = ref_counts(net, live);
    return deref_cone(net, refs, node);
}

std::vector<uint32_t> all_mffc_sizes(const AigNetwork& net) {
    std::vector<uint32_t> sizes(net.num_vars(), 0);
    std::vector<char> live = live_mask(net);
    std::vector<uint32_t> refs = ref_counts(net, live);
    for (Var v = net.num_pis() + 1; v < net.num_vars(); ++v) {
        if (!live[v]) continue;
        sizes[v] = deref_cone(net, refs, v);
        reref_cone(net, refs, v);
    }
    return sizes;
}

bool introduces_loop(const AigNetwork& net, const Lac& lac) {
    if (lac.kind != LacKind::Substitute) return false;
    Var src = lac.source.var();
    if (src == lac.target) return true;
    return tfo(net, lac.target).contains(src);
}

ApplyResult apply_lac_mapped(const AigNetwork& net, const Lac& lac) {
    assert(lac.target < net.num_vars() && !net.is_const_var(lac.target));
    if (lac.kind == LacKind::Substitute && lac.source == Literal::of(lac.target)) {
        // Identity substitution: a no-op, returned as a plain copy.
        std::vector<Var> identity(net.num_vars());
        for (Var v = 0; v < net.num_vars(); ++v) identity[v] = v;
        return {net, std::move(identity)};
    }
    if (introduces_loop(net, lac))
        throw std::invalid_argument("apply_lac: substitution would introduce a loop");

    const Var target = lac.target;
    const Literal repl = lac.replacement_literal();

    auto redirect = [&](Literal lit) {
        return lit.var() == target ? repl.xor_complement(lit.complemented()) : lit;
    };

    // Redirected fanins, still indexed by old variable.
    const uint32_t old_vars = net.num_vars();
    std::vector<AndNode> edited(net.and_count());
    for (uint32_t i = 0; i < net.and_count(); ++i) {
        const AndNode& n = net.ands()[i];
        edited[i] = {redirect(n.left), redirect(n.right)};
    }

    // Substitution sources may have higher indices than the target's fanouts,
    // so rebuild in a deterministic topological order (Kahn, min old index).
    std::vector<uint32_t> pending(old_vars, 0);
    std::vector<std::vector<Var>> fanouts(old_vars);
    for (uint32_t i = 0; i < net.and_count(); ++i) {
        Var v = net.and_var(i);
        for (Var f : {edited[i].left.var(), edited[i].right.var()}) {
            if (f > net.num_pis()) {
                ++pending[v];
                fanouts[f].push_back(v);
            }
        }
    }

    AigNetwork out(net.num_pis());
    out.name = net.name;
    std::vector<Var> var_map(old_vars, 0);
    for (Var v = 1; v <= net.num_pis(); ++v) {
        var_map[v] = v;
        out.set_uid(v, net.uid(v));
    }

    std::priority_queue<Var, std::vector<Var>, std::greater<>> ready;
    for (uint32_t i = 0; i < net.and_count(); ++i)
        if (pending[net.and_var(i)] == 0) ready.push(net.and_var(i));

    uint32_t placed = 0;
    while (!ready.empty()) {
        Var v = ready.top();
        ready.pop();
        const AndNode& n = edited[net.and_index(v)];
        Literal l = Literal::of(var_map[n.left.var()], n.left.complemented());
        Literal r = Literal::of(var_map[n.right.var()], n.right.complemented());
        Var nv = out.add_and(l, r);
        out.set_uid(nv, net.uid(v));
        var_map[v] = nv;
        ++placed;
        for (Var u : fanouts[v])
            if (--pending[u] == 0) ready.push(u);
    }
    assert(placed == net.and_count() && "edit left the graph cyclic");
    (void)placed;

    for (Literal po : net.pos()) {
        Literal t = redirect(po);
        out.add_po(Literal::of(var_map[t.var()], t.complemented()));
    }
    return {std::move(out), std::move(var_map)};
}

AigNetwork apply_lac(const AigNetwork& net, const Lac& lac) {
    return apply_lac_mapped(net, lac).net;
}

CleanupResult cleanup_mapped(const AigNetwork& net) {
    AigNetwork out(net.num_pis());
    out.name = net.name;
    for (Var v = 1; v <= net.num_pis(); ++v) out.set_uid(v, net.uid(v));

    std::vector<std::optional<Literal>> lit_map(net.num_vars());
    lit_map[0] = Literal::constant(false);
    for (Var v = 1; v <= net.num_pis(); ++v) lit_map[v] = Literal::of(v);

    std::unordered_map<uint64_t, Literal> hash;  // key: packed (min,max) fanins
    std::vector<char> live = live_mask(net);

    for (Var v = net.num_pis() + 1; v < net.num_vars(); ++v) {
        if (!live[v]) continue;
        const AndNode& n = net.node(v);
        Literal l = lit_map[n.left.var()]->xor_complement(n.left.complemented());
        Literal r = lit_map[n.right.var()]->xor_complement(n.right.complemented());
        if (l.value > r.value) std::swap(l, r);

        Literal folded;
        bool have = true;
        if (l.is_const(false) || l == !r) {
            folded = Literal::constant(false);
        } else if (l.is_const(true) || l == r) {
            folded = r;
        } else {
            have = false;
        }
        if (!have) {
            uint64_t key = (uint64_t{l.value} << 32) | r.value;
            auto it = hash.find(key);
            if (it != hash.end()) {
                folded = it->second;
            } else {
                Var nv = out.add_and(r, l);  // larger literal first
                out.set_uid(nv, net.uid(v));
                folded = Literal::of(nv);
                hash.emplace(key, folded);
            }
        }
        lit_map[v] = folded;
    }

    for (Literal po : net.pos())
        out.add_po(lit_map[po.var()]->xor_complement(po.complemented()));

    // Folding can strand hashed nodes that no PO reaches; sweep them.
    std::vector<char> out_live = live_mask(out);
    bool all_live = true;
    for (Var v = out.num_pis() + 1; v < out.num_vars(); ++v)
        if (!out_live[v]) all_live = false;
    if (!all_live) {
        AigNetwork swept(out.num_pis());
        swept.name = out.name;
        for (Var v = 1; v <= out.num_pis(); ++v) swept.set_uid(v, out.uid(v));
        std::vector<Var> remap(out.num_vars(), 0);
        for (Var v = 1; v <= out.num_pis(); ++v) remap[v] = v;
        for (Var v = out.num_pis() + 1; v < out.num_vars(); ++v) {
            if (!out_live[v]) continue;
            const AndNode& n = out.node(v);
            Var nv = swept.add_and(Literal::of(remap[n.left.var()], n.left.complemented()),
                                   Literal::of(remap[n.right.var()], n.right.complemented()));
            swept.set_uid(nv, out.uid(v));
            remap[v] = nv;
        }
        for (Literal po : out.pos())
            swept.add_po(Literal::of(remap[po.var()], po.complemented()));
        for (auto& m : lit_map)
            if (m) {
                Var nv = remap[m->var()];
                m = out_live[m->var()] || m->var() <= out.num_pis()
                        ? std::optional<Literal>(Literal::of(nv, m->complemented()))
                        : std::nullopt;
            }
        lit_map[0] = Literal::constant(false);
        out = std::move(swept);
    }
    return {std::move(out), std::move(lit_map)};
}

AigNetwork cleanup(const AigNetwork& net) {
    return cleanup_mapped(net).net;
}

}  // namespace als
