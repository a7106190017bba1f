// ============================================================================
// modelsearch.cpp — depth-first countermodel search
// ============================================================================

#include "condlogic/modelsearch.hpp"

#include <algorithm>
#include <bit>
#include <memory>
#include <random>
#include <stdexcept>

namespace condlogic {

const char* search_status_name(SearchStatus s) {
    switch (s) {
        case SearchStatus::Found: return "found";
        case SearchStatus::Exhausted: return "exhausted";
        case SearchStatus::BudgetExceeded: return "budget-exceeded";
    }
    return "?";
}

namespace {

// ---- three-valued evaluation over a partially decided selection table ----

struct TF {
    Mask t = 0, f = 0;  // known-true / known-false worlds
};

struct SExpr {
    Op op = Op::Var;  // Var marks an atom leaf
    int atom = -1;
    std::unique_ptr<SExpr> l, r;
};

std::unique_ptr<SExpr> compile_target(const FormulaPtr& f,
                                      std::vector<std::string>& atoms) {
    auto e = std::make_unique<SExpr>();
    if (f->op == Op::Var || f->op == Op::MetaVar) {
        e->op = Op::Var;
        const std::string& name = f->name;
        auto it = std::find(atoms.begin(), atoms.end(), name);
        if (it == atoms.end()) {
            atoms.push_back(name);
            e->atom = static_cast<int>(atoms.size() - 1);
        } else {
            e->atom = static_cast<int>(it - atoms.begin());
        }
        return e;
    }
    e->op = f->op;
    e->l = compile_target(f->left, atoms);
    if (f->right) e->r = compile_target(f->right, atoms);
    return e;
}

struct PartialTable {
    int n = 0;
    int nsets = 0;
    Mask full = 0;
    std::vector<Mask> sel;                // [w * nsets + x]
    std::vector<std::uint32_t> decided;   // per-world bitmask over x

    void reset(int worlds) {
        n = worlds;
        nsets = 1 << n;
        full = static_cast<Mask>(nsets - 1);
        sel.assign(static_cast<std::size_t>(n) * nsets, 0);
        decided.assign(n, 0);
    }
    bool is_decided(int w, Mask x) const { return (decided[w] >> x) & 1u; }
    Mask get(int w, Mask x) const { return sel[static_cast<std::size_t>(w) * nsets + x]; }
    void set(int w, Mask x, Mask v) { sel[static_cast<std::size_t>(w) * nsets + x] = v; }
};

TF eval3(const SExpr& e, const Mask* amasks, const PartialTable& pt) {
    switch (e.op) {
        case Op::Var: {
            const Mask m = amasks[e.atom];
            return {m, static_cast<Mask>(pt.full & ~m)};
        }
        case Op::Not: {
            const TF a = eval3(*e.l, amasks, pt);
            return {a.f, a.t};
        }
        case Op::And: {
            const TF a = eval3(*e.l, amasks, pt), b = eval3(*e.r, amasks, pt);
            return {static_cast<Mask>(a.t & b.t), static_cast<Mask>(a.f | b.f)};
        }
        case Op::Or: {
            const TF a = eval3(*e.l, amasks, pt), b = eval3(*e.r, amasks, pt);
            return {static_cast<Mask>(a.t | b.t), static_cast<Mask>(a.f & b.f)};
        }
        case Op::Imp: {
            const TF a = eval3(*e.l, amasks, pt), b = eval3(*e.r, amasks, pt);
            return {static_cast<Mask>(a.f | b.t), static_cast<Mask>(a.t & b.f)};
        }
        case Op::Iff: {
            const TF a = eval3(*e.l, amasks, pt), b = eval3(*e.r, amasks, pt);
            return {static_cast<Mask>((a.t & b.t) | (a.f & b.f)),
                    static_cast<Mask>((a.t & b.f) | (a.f & b.t))};
        }
        case Op::Cond: {
            const TF a = eval3(*e.l, amasks, pt);
            if ((a.t | a.f) != pt.full) return {};  // antecedent not settled
            const Mask x = a.t;
            const TF c = eval3(*e.r, amasks, pt);
            TF out;
            for (int w = 0; w < pt.n; ++w) {
                if (!pt.is_decided(w, x)) continue;
                const Mask s = pt.get(w, x);
                if (s & c.f)
                    out.f |= Mask{1} << w;
                else if ((s & ~c.t) == 0)
                    out.t |= Mask{1} << w;
            }
            return out;
        }
        default: return {};
    }
}

// ---- the searcher ----

struct Searcher {
    const SearchSpec& spec;
    std::vector<Condition> conds;  // canonical: mod' folded into mod, deduped
    bool has_id = false, has_cent = false;
    std::uint64_t work = 0;
    bool budget_hit = false;

    // per-size state
    int n = 0, nsets = 0;
    Mask full = 0;
    PartialTable pt;
    std::vector<std::pair<int, Mask>> entries;
    std::vector<std::vector<Mask>> domains;
    std::unique_ptr<SExpr> target;
    std::vector<std::string> atoms;
    int k = 0;
    std::uint64_t nassign = 0;
    std::vector<Mask> amasks;

    explicit Searcher(const SearchSpec& s) : spec(s) {
        for (Condition c : s.conditions) {
            Condition canon = c == Condition::ModPrime ? Condition::Mod : c;
            if (std::find(conds.begin(), conds.end(), canon) == conds.end())
                conds.push_back(canon);
        }
        has_id = std::find(conds.begin(), conds.end(), Condition::Id) != conds.end();
        has_cent = std::find(conds.begin(), conds.end(), Condition::Cent) != conds.end();
        atoms.clear();
        target = compile_target(s.target, atoms);
        k = static_cast<int>(atoms.size());
    }

    bool spend(std::uint64_t units = 1) {
        if (spec.budget - work < units) {  // never count the denied step
            budget_hit = true;
            return false;
        }
        work += units;
        return true;
    }

    void setup(int worlds) {
        n = worlds;
        nsets = 1 << n;
        full = static_cast<Mask>(nsets - 1);
        pt.reset(n);
        if (k * n > 40)
            throw std::invalid_argument("target has too many atoms for a " +
                                        std::to_string(n) + "-world search");
        nassign = std::uint64_t{1} << (k * n);
        amasks.assign(k, 0);

        entries.clear();
        for (int w = 0; w < n; ++w) {
            std::vector<Mask> sets;
            for (Mask x = 0; x <= full; ++x) sets.push_back(x);
            std::sort(sets.begin(), sets.end(), [](Mask a, Mask b) {
                const int pa = std::popcount(a), pb = std::popcount(b);
                return pa != pb ? pa < pb : a < b;
            });
            for (Mask x : sets) entries.emplace_back(w, x);
        }

        domains.clear();
        std::mt19937_64 rng(spec.seed ? *spec.seed + static_cast<std::uint64_t>(n) : 0);
        for (const auto& [w, x] : entries) {
            std::vector<Mask> dom;
            if (has_cent && ((x >> w) & 1u)) {
                dom.push_back(Mask{1} << w);
            } else if (has_id) {
                // submasks of x, ascending
                for (Mask v = 0; v <= full; ++v)
                    if ((v & ~x) == 0) dom.push_back(v);
            } else {
                for (Mask v = 0; v <= full; ++v) dom.push_back(v);
            }
            if (spec.seed) std::shuffle(dom.begin(), dom.end(), rng);
            domains.push_back(std::move(dom));
        }
    }

    bool anchor_viable(std::uint64_t a) {
        for (int j = 0; j < k; ++j)
            amasks[j] = static_cast<Mask>((a >> (j * n)) & full);
        const TF r = eval3(*target, amasks.data(), pt);
        return (r.t & 1u) == 0;  // not settled true at w0
    }

    // First viable anchor at or after `from`; nassign when none / budget out.
    std::uint64_t advance_anchor(std::uint64_t from) {
        for (std::uint64_t a = from; a < nassign; ++a) {
            if (!spend()) return nassign;
            if (anchor_viable(a)) return a;
        }
        return nassign;
    }

    bool conditions_ok(int w, Mask x, Mask v) {
        const std::uint32_t dec = pt.decided[w];
        for (Condition c : conds) {
            switch (c) {
                case Condition::Id:
                    if (v & ~x) return false;
                    break;
                case Condition::Cent:
                    if (((x >> w) & 1u) && v != (Mask{1} << w)) return false;
                    break;
                case Condition::Mod:
                case Condition::ModPrime: {
                    const bool ant_new = (v & x) == 0;
                    for (Mask t = 0; t <= full; ++t) {
                        if (!((dec >> t) & 1u)) continue;
                        const Mask s = pt.get(w, t);
                        if (ant_new && (s & x)) return false;
                        if ((s & t) == 0 && (v & t)) return false;
                    }
                    break;
                }
                case Condition::Cv: {
                    for (Mask z = 0; z <= full; ++z) {
                        if (!((dec >> z) & 1u) || z == x) continue;
                        if ((z & ~x) == 0) {
                            // z ⊂ x: x is the conditioned set
                            if (((v & z) || (v & ~x)) && (pt.get(w, z) & ~v)) return false;
                        }
                        if ((x & ~z) == 0) {
                            // x ⊂ z: x is the intersection slot
                            const Mask s = pt.get(w, z);
                            if (((s & x) || (s & ~z)) && (v & ~s)) return false;
                        }
                    }
                    break;
                }
                case Condition::Cso: {
                    for (Mask u = 0; u <= full; ++u) {
                        if (!((dec >> u) & 1u)) continue;
                        const Mask s = pt.get(w, u);
                        if ((v & ~u) == 0 && (s & ~x) == 0 && v != s) return false;
                    }
                    break;
                }
                case Condition::Ca:
                case Condition::Sda: {
                    const bool is_ca = c == Condition::Ca;
                    // x as the union: pairs (p, q) of decided sets with p|q = x
                    for (Mask p = x;; p = (p - 1) & x) {
                        if ((dec >> p) & 1u) {
                            const Mask rem = x & ~p;
                            for (Mask t = p;; t = (t - 1) & p) {
                                const Mask q = rem | t;
                                if ((dec >> q) & 1u) {
                                    const Mask lhs = pt.get(w, p) | pt.get(w, q);
                                    if (is_ca ? (v & ~lhs) != 0 : (lhs & ~v) != 0)
                                        return false;
                                }
                                if (t == 0) break;
                            }
                        }
                        if (p == 0) break;
                    }
                    // x as one operand
                    for (Mask q = 0; q <= full; ++q) {
                        if (!((dec >> q) & 1u)) continue;
                        const Mask z = x | q;
                        if (!((dec >> z) & 1u)) continue;
                        const Mask zv = pt.get(w, z);
                        const Mask lhs = v | pt.get(w, q);
                        if (is_ca ? (zv & ~lhs) != 0 : (lhs & ~zv) != 0) return false;
                    }
                    break;
                }
            }
        }
        return true;
    }

    bool dfs(std::size_t depth, std::uint64_t a_star, SearchResult& out) {
        if (depth == entries.size()) return emit(a_star, out);
        const auto [w, x] = entries[depth];
        pt.decided[w] |= std::uint32_t{1} << x;
        for (Mask v : domains[depth]) {
            if (!spend()) break;
            pt.set(w, x, v);
            if (!conditions_ok(w, x, v)) continue;
            const std::uint64_t a = advance_anchor(a_star);
            if (budget_hit) break;
            if (a >= nassign) continue;
            if (dfs(depth + 1, a, out)) {
                pt.decided[w] &= ~(std::uint32_t{1} << x);
                return true;
            }
            if (budget_hit) break;
        }
        pt.decided[w] &= ~(std::uint32_t{1} << x);
        return false;
    }

    bool emit(std::uint64_t a_star, SearchResult& out) {
        // Everything is decided, so the watched anchor is settled false at w0.
        Frame fr = Frame::make(n);
        for (int w = 0; w < n; ++w)
            for (Mask x = 0; x <= full; ++x) fr.set_selection(w, x, pt.get(w, x));
        Witness wit;
        wit.world = 0;
        for (int j = 0; j < k; ++j)
            wit.assignment[atoms[j]] = static_cast<Mask>((a_star >> (j * n)) & full);
        std::string why;
        if (!verify_countermodel(fr, spec.conditions, spec.target, wit, &why))
            throw std::logic_error("internal error: unverified countermodel: " + why);
        out.frame = std::move(fr);
        out.witness = std::move(wit);
        return true;
    }

    bool search_size(int worlds, SearchResult& out) {
        setup(worlds);
        const std::uint64_t a0 = advance_anchor(0);
        if (budget_hit || a0 >= nassign) return false;
        return dfs(0, a0, out);
    }
};

}  // namespace

bool verify_countermodel(const Frame& frame, const std::vector<Condition>& conditions,
                         const FormulaPtr& target, const Witness& witness,
                         std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (!target) return fail("no target");
    if (witness.world < 0 || witness.world >= frame.size())
        return fail("witness world out of range");
    for (Condition c : conditions)
        if (auto w = check_condition(frame, c))
            return fail(std::string("condition ") + condition_name(c) +
                        " fails at world " + std::to_string(w->world));
    Valuation val;
    MetaAssign meta;
    for (const auto& [name, mask] : witness.assignment) {
        if (mask & ~frame.full()) return fail("assignment for " + name + " out of range");
        if (!name.empty() && name[0] >= 'A' && name[0] <= 'Z')
            meta[name] = mask;
        else
            val[name] = mask;
    }
    for (const auto& v : variables(target))
        if (!val.count(v)) return fail("assignment missing variable " + v);
    for (const auto& m : metavariables(target))
        if (!meta.count(m)) return fail("assignment missing metavariable " + m);
    const Mask sat = truth_set(frame, val, meta, target);
    if ((sat >> witness.world) & 1u)
        return fail("target is true at the witness world");
    return true;
}

SearchResult find_countermodel(const SearchSpec& spec) {
    if (!spec.target) throw std::invalid_argument("search target is required");
    if (spec.max_worlds < 1 || spec.max_worlds > kMaxSearchWorlds)
        throw std::invalid_argument("max_worlds must be between 1 and " +
                                    std::to_string(kMaxSearchWorlds));
    Searcher s(spec);
    SearchResult out;
    for (int n = 1; n <= spec.max_worlds; ++n) {
        if (s.search_size(n, out)) {
            out.status = SearchStatus::Found;
            out.worlds = n;
            out.nodes = s.work;
            return out;
        }
        out.worlds = n;
        if (s.budget_hit) {
            out.status = SearchStatus::BudgetExceeded;
            out.nodes = s.work;
            return out;
        }
    }
    out.status = SearchStatus::Exhausted;
    out.nodes = s.work;
    return out;
}

}  // namespace condlogic
