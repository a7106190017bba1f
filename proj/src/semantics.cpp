// ============================================================================
// semantics.cpp — frames, truth sets, conditions, correspondence
// ============================================================================

#include "condlogic/semantics.hpp"

#include <algorithm>
#include <memory>
#include <bit>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

namespace condlogic {

using nlohmann::json;

// ── Frame basics ────────────────────────────────────────────────────────────

Frame Frame::make(int n) {
    std::vector<std::string> names;
    names.reserve(n);
    for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
    return make(std::move(names));
}

Frame Frame::make(std::vector<std::string> world_names) {
    int n = static_cast<int>(world_names.size());
    if (n < 1) throw FrameFormatError("a frame needs at least one world");
    if (n > kMaxFrameWorlds)
        throw FrameFormatError("frames are limited to " +
                               std::to_string(kMaxFrameWorlds) + " worlds");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (world_names[i] == world_names[j])
                throw FrameFormatError("duplicate world name '" + world_names[i] + "'");
    Frame fr;
    fr.n_ = n;
    fr.names_ = std::move(world_names);
    fr.sel_.assign(static_cast<std::size_t>(n) << n, 0);
    for (int w = 0; w < n; ++w)
        for (Mask x = 0; x <= fr.full(); ++x) fr.set_selection(w, x, x);
    return fr;
}

int Frame::world_index(const std::string& name) const {
    for (int i = 0; i < n_; ++i)
        if (names_[i] == name) return i;
    return -1;
}

Frame lewis_g() {
    Frame fr = Frame::make(4);
    const Mask a = 0b0110;  // {1,2}
    for (int i = 0; i < 4; ++i) {
        for (Mask x = 0; x <= fr.full(); ++x) {
            Mask out;
            if (x == a && i == 0)
                out = 0b0010;           // {1}
            else if (x & (Mask(1) << i))
                out = Mask(1) << i;     // {i}
            else
                out = x;
            fr.set_selection(i, x, out);
        }
    }
    return fr;
}

Frame material_frame(int n) {
    Frame fr = Frame::make(n);
    for (int w = 0; w < n; ++w)
        for (Mask x = 0; x <= fr.full(); ++x)
            fr.set_selection(w, x, (Mask(1) << w) & x);
    return fr;
}

std::string mask_to_string(const Frame& fr, Mask m) {
    std::string out = "{";
    bool first = true;
    for (int i = 0; i < fr.size(); ++i)
        if (m & (Mask(1) << i)) {
            if (!first) out += ",";
            out += fr.world_names()[i];
            first = false;
        }
    return out + "}";
}

// ── JSON I/O ────────────────────────────────────────────────────────────────

namespace {

Mask mask_from_names(const Frame& fr, const json& arr, const std::string& what) {
    if (!arr.is_array()) throw FrameFormatError(what + " must be an array of world names");
    Mask m = 0;
    for (const auto& e : arr) {
        if (!e.is_string()) throw FrameFormatError(what + " must contain world names");
        int idx = fr.world_index(e.get<std::string>());
        if (idx < 0)
            throw FrameFormatError("unknown world '" + e.get<std::string>() + "' in " + what);
        Mask bit = Mask(1) << idx;
        if (m & bit)
            throw FrameFormatError("duplicate world '" + e.get<std::string>() + "' in " + what);
        m |= bit;
    }
    return m;
}

json mask_to_names(const Frame& fr, Mask m) {
    json arr = json::array();
    for (int i = 0; i < fr.size(); ++i)
        if (m & (Mask(1) << i)) arr.push_back(fr.world_names()[i]);
    return arr;
}

}  // namespace

Frame frame_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw FrameFormatError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("worlds") || !j.contains("selection"))
        throw FrameFormatError("frame object needs 'worlds' and 'selection'");
    if (!j["worlds"].is_array() || j["worlds"].empty())
        throw FrameFormatError("'worlds' must be a non-empty array");
    std::vector<std::string> names;
    for (const auto& e : j["worlds"]) {
        if (!e.is_string()) throw FrameFormatError("world names must be strings");
        names.push_back(e.get<std::string>());
    }
    Frame fr = Frame::make(names);

    const std::size_t expected = static_cast<std::size_t>(fr.size()) << fr.size();
    std::vector<bool> seen(expected, false);
    if (!j["selection"].is_array())
        throw FrameFormatError("'selection' must be an array");
    for (const auto& entry : j["selection"]) {
        if (!entry.is_object() || !entry.contains("w") || !entry.contains("set") ||
            !entry.contains("out"))
            throw FrameFormatError("selection entries need 'w', 'set' and 'out'");
        if (!entry["w"].is_string())
            throw FrameFormatError("selection entry 'w' must be a world name");
        int w = fr.world_index(entry["w"].get<std::string>());
        if (w < 0)
            throw FrameFormatError("unknown world '" + entry["w"].get<std::string>() +
                                   "' in selection");
        Mask x = mask_from_names(fr, entry["set"], "selection 'set'");
        Mask out = mask_from_names(fr, entry["out"], "selection 'out'");
        std::size_t idx = (static_cast<std::size_t>(w) << fr.size()) + x;
        if (seen[idx])
            throw FrameFormatError("duplicate selection entry for w=" +
                                   fr.world_names()[w] + ", set=" + mask_to_string(fr, x));
        seen[idx] = true;
        fr.set_selection(w, x, out);
    }
    for (std::size_t idx = 0; idx < expected; ++idx)
        if (!seen[idx]) {
            int w = static_cast<int>(idx >> fr.size());
            Mask x = static_cast<Mask>(idx & fr.full());
            throw FrameFormatError("missing selection entry for w=" + fr.world_names()[w] +
                                   ", set=" + mask_to_string(fr, x));
        }
    return fr;
}

std::string frame_to_json(const Frame& fr) {
    json j;
    j["worlds"] = json::array();
    for (const auto& n : fr.world_names()) j["worlds"].push_back(n);
    j["selection"] = json::array();
    for (int w = 0; w < fr.size(); ++w)
        for (Mask x = 0; x <= fr.full(); ++x) {
            json entry;
            entry["w"] = fr.world_names()[w];
            entry["set"] = mask_to_names(fr, x);
            entry["out"] = mask_to_names(fr, fr.g(w, x));
            j["selection"].push_back(entry);
        }
    return j.dump(2);
}

Frame load_frame(const std::string& spec_text) {
    if (spec_text.rfind("builtin:", 0) == 0) {
        std::string name = spec_text.substr(8);
        if (name == "lewis-g") return lewis_g();
        if (name.rfind("material-", 0) == 0) {
            int n = 0;
            try {
                n = std::stoi(name.substr(9));
            } catch (...) {
                throw FrameFormatError("unknown builtin frame '" + name + "'");
            }
            if (n < 1 || n > kMaxFrameWorlds)
                throw FrameFormatError("material-<n> needs 1 <= n <= " +
                                       std::to_string(kMaxFrameWorlds));
            return material_frame(n);
        }
        throw FrameFormatError("unknown builtin frame '" + name + "'");
    }
    std::ifstream in(spec_text);
    if (!in) throw FrameFormatError("cannot open frame file '" + spec_text + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return frame_from_json(buf.str());
}

// ── Truth sets ──────────────────────────────────────────────────────────────

Mask truth_set(const Frame& fr, const Valuation& v, const MetaAssign& m,
               const FormulaPtr& f) {
    switch (f->op) {
        case Op::Var: {
            auto it = v.find(f->name);
            if (it == v.end()) throw EvalError("no valuation for variable " + f->name);
            return it->second;
        }
        case Op::MetaVar: {
            auto it = m.find(f->name);
            if (it == m.end())
                throw EvalError("no assignment for metavariable " + f->name);
            return it->second;
        }
        case Op::Not:
            return fr.full() & ~truth_set(fr, v, m, f->left);
        case Op::And:
            return truth_set(fr, v, m, f->left) & truth_set(fr, v, m, f->right);
        case Op::Or:
            return truth_set(fr, v, m, f->left) | truth_set(fr, v, m, f->right);
        case Op::Imp:
            return fr.full() & (~truth_set(fr, v, m, f->left) | truth_set(fr, v, m, f->right));
        case Op::Iff: {
            Mask a = truth_set(fr, v, m, f->left);
            Mask b = truth_set(fr, v, m, f->right);
            return fr.full() & ~(a ^ b);
        }
        case Op::Cond: {
            Mask ant = truth_set(fr, v, m, f->left);
            Mask con = truth_set(fr, v, m, f->right);
            Mask out = 0;
            for (int w = 0; w < fr.size(); ++w)
                if ((fr.g(w, ant) & ~con) == 0) out |= Mask(1) << w;
            return out;
        }
    }
    throw EvalError("unreachable");
}

Mask truth_set(const Frame& fr, const Valuation& v, const FormulaPtr& f) {
    return truth_set(fr, v, MetaAssign{}, f);
}

// ── Validity ────────────────────────────────────────────────────────────────

namespace {

// Quantifies all names in `names` over subsets of the frame, counting in
// binary with the last name varying fastest; returns the first witness.
// Formulas are compiled once per validity query into trees whose leaves
// index an assignment array, so the per-assignment evaluation does no name
// lookups.
struct CExpr {
    Op op = Op::Var;
    int atom = -1;
    std::unique_ptr<CExpr> l, r;
};

std::unique_ptr<CExpr> compile_expr(const FormulaPtr& f,
                                    const std::vector<std::string>& order) {
    auto e = std::make_unique<CExpr>();
    if (f->op == Op::Var || f->op == Op::MetaVar) {
        auto it = std::find(order.begin(), order.end(), f->name);
        if (it == order.end()) throw EvalError("no value for atom '" + f->name + "'");
        e->atom = static_cast<int>(it - order.begin());
        return e;
    }
    e->op = f->op;
    e->l = compile_expr(f->left, order);
    if (f->right) e->r = compile_expr(f->right, order);
    return e;
}

Mask ceval(const CExpr& e, const Mask* assign, const Frame& fr, Mask top) {
    switch (e.op) {
        case Op::Var: return assign[e.atom];
        case Op::Not: return top & ~ceval(*e.l, assign, fr, top);
        case Op::And: return ceval(*e.l, assign, fr, top) & ceval(*e.r, assign, fr, top);
        case Op::Or: return ceval(*e.l, assign, fr, top) | ceval(*e.r, assign, fr, top);
        case Op::Imp:
            return (top & ~ceval(*e.l, assign, fr, top)) | ceval(*e.r, assign, fr, top);
        case Op::Iff: {
            const Mask a = ceval(*e.l, assign, fr, top);
            const Mask b = ceval(*e.r, assign, fr, top);
            return top & ~(a ^ b);
        }
        case Op::Cond: {
            const Mask x = ceval(*e.l, assign, fr, top);
            const Mask c = ceval(*e.r, assign, fr, top);
            Mask out = 0;
            for (int w = 0; w < fr.size(); ++w)
                if ((fr.g(w, x) & ~c) == 0) out |= Mask(1) << w;
            return out;
        }
        default: return 0;
    }
}

std::optional<Witness> valid_over(const Frame& fr, const FormulaPtr& f,
                                  const std::vector<std::string>& var_names,
                                  const std::vector<std::string>& meta_names) {
    std::vector<std::string> all = var_names;
    all.insert(all.end(), meta_names.begin(), meta_names.end());
    const std::size_t k = all.size();
    std::vector<Mask> assign(k, 0);
    const Mask top = fr.full();
    const std::unique_ptr<CExpr> prog = compile_expr(f, all);
    while (true) {
        const Mask ts = ceval(*prog, assign.data(), fr, top);
        if (ts != top) {
            int world = std::countr_zero(top & ~ts);
            Witness wit;
            for (std::size_t i = 0; i < k; ++i) wit.assignment[all[i]] = assign[i];
            wit.world = world;
            return wit;
        }
        // odometer: last name varies fastest
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (assign[i] < top) {
                ++assign[i];
                break;
            }
            assign[i] = 0;
            if (i == 0) return std::nullopt;
        }
        if (k == 0) return std::nullopt;
    }
}

}  // namespace

std::optional<Witness> formula_valid_on_frame(const Frame& fr, const FormulaPtr& f) {
    return valid_over(fr, f, variables(f), metavariables(f));
}

std::optional<Witness> schema_valid_on_frame(const Frame& fr, const FormulaPtr& schema) {
    return valid_over(fr, schema, variables(schema), metavariables(schema));
}

// ── Frame conditions ────────────────────────────────────────────────────────

const char* condition_name(Condition c) {
    switch (c) {
        case Condition::Id: return "id";
        case Condition::Mod: return "mod";
        case Condition::ModPrime: return "mod'";
        case Condition::Cv: return "cv";
        case Condition::Cso: return "cso";
        case Condition::Cent: return "cent";
        case Condition::Ca: return "ca";
        case Condition::Sda: return "sda";
    }
    return "?";
}

std::optional<Condition> condition_from_name(const std::string& name) {
    if (name == "id") return Condition::Id;
    if (name == "mod") return Condition::Mod;
    if (name == "mod'" || name == "mod_prime" || name == "modp") return Condition::ModPrime;
    if (name == "cv") return Condition::Cv;
    if (name == "cso") return Condition::Cso;
    if (name == "cent") return Condition::Cent;
    if (name == "ca") return Condition::Ca;
    if (name == "sda") return Condition::Sda;
    return std::nullopt;
}

std::vector<Condition> all_conditions() {
    return {Condition::Id,  Condition::Mod, Condition::ModPrime, Condition::Cv,
            Condition::Cso, Condition::Cent, Condition::Ca,      Condition::Sda};
}

namespace {

bool condition_instance_holds(const Frame& fr, Condition c, int i, Mask x, Mask y) {
    const Mask top = fr.full();
    switch (c) {
        case Condition::Id:
            return (fr.g(i, x) & ~x) == 0;
        case Condition::Mod:
            return (fr.g(i, x) & x) != 0 || (fr.g(i, y) & x) == 0;
        case Condition::ModPrime: {
            Mask cx = top & ~x;
            return (fr.g(i, cx) & cx) != 0 || (fr.g(i, y) & cx) == 0;
        }
        case Condition::Cv:
            return (fr.g(i, x) & y) == 0 || (fr.g(i, x & y) & ~fr.g(i, x)) == 0;
        case Condition::Cso:
            return (fr.g(i, x) & ~y) != 0 || (fr.g(i, y) & ~x) != 0 ||
                   fr.g(i, x) == fr.g(i, y);
        case Condition::Cent:
            return (x & (Mask(1) << i)) == 0 || fr.g(i, x) == (Mask(1) << i);
        case Condition::Ca:
            return (fr.g(i, x | y) & ~(fr.g(i, x) | fr.g(i, y))) == 0;
        case Condition::Sda:
            return ((fr.g(i, x) | fr.g(i, y)) & ~fr.g(i, x | y)) == 0;
    }
    return true;
}

bool condition_is_unary(Condition c) {
    return c == Condition::Id || c == Condition::Cent;
}

}  // namespace

std::optional<ConditionWitness> check_condition(const Frame& fr, Condition c) {
    const Mask top = fr.full();
    for (int i = 0; i < fr.size(); ++i) {
        for (Mask x = 0;; ++x) {
            if (condition_is_unary(c)) {
                if (!condition_instance_holds(fr, c, i, x, 0))
                    return ConditionWitness{i, x, std::nullopt};
            } else {
                for (Mask y = 0;; ++y) {
                    if (!condition_instance_holds(fr, c, i, x, y))
                        return ConditionWitness{i, x, y};
                    if (y == top) break;
                }
            }
            if (x == top) break;
        }
    }
    return std::nullopt;
}

// ── Rule preservation ───────────────────────────────────────────────────────

std::optional<Witness> rule_preserved_on_frame(const Frame& fr,
                                               const std::vector<FormulaPtr>& premises,
                                               const FormulaPtr& conclusion) {
    std::set<std::string> var_set, meta_set;
    auto gather = [&](const FormulaPtr& f) {
        for (const auto& n : variables(f)) var_set.insert(n);
        for (const auto& n : metavariables(f)) meta_set.insert(n);
    };
    for (const auto& p : premises) gather(p);
    gather(conclusion);
    std::vector<std::string> vars(var_set.begin(), var_set.end());
    std::vector<std::string> metas(meta_set.begin(), meta_set.end());
    std::vector<std::string> all = vars;
    all.insert(all.end(), metas.begin(), metas.end());

    const std::size_t k = all.size();
    std::vector<Mask> assign(k, 0);
    const Mask top = fr.full();
    while (true) {
        Valuation v;
        MetaAssign m;
        for (std::size_t i = 0; i < vars.size(); ++i) v[vars[i]] = assign[i];
        for (std::size_t i = 0; i < metas.size(); ++i) m[metas[i]] = assign[vars.size() + i];
        bool premises_valid = true;
        for (const auto& p : premises)
            if (truth_set(fr, v, m, p) != top) {
                premises_valid = false;
                break;
            }
        if (premises_valid) {
            Mask ts = truth_set(fr, v, m, conclusion);
            if (ts != top) {
                Witness wit;
                for (std::size_t i = 0; i < k; ++i) wit.assignment[all[i]] = assign[i];
                wit.world = std::countr_zero(top & ~ts);
                return wit;
            }
        }
        std::size_t i = k;
        bool done = (k == 0);
        while (i > 0) {
            --i;
            if (assign[i] < top) {
                ++assign[i];
                break;
            }
            assign[i] = 0;
            if (i == 0) done = true;
        }
        if (done) return std::nullopt;
    }
}

// ── Correspondence ──────────────────────────────────────────────────────────

CorrespondenceReport correspondence_check(int size, Condition c, const FormulaPtr& schema,
                                          std::uint64_t samples, std::uint64_t seed) {
    CorrespondenceReport rep;
    const int n = size;
    const Mask top = (Mask(1) << n) - 1;
    const std::size_t entries = static_cast<std::size_t>(n) << n;

    auto check_one = [&](Frame& fr) {
        bool cond_ok = !check_condition(fr, c).has_value();
        bool schema_ok = !schema_valid_on_frame(fr, schema).has_value();
        ++rep.frames_checked;
        if (cond_ok != schema_ok) {
            ++rep.violations;
            if (rep.examples.size() < 5) rep.examples.push_back(fr);
        }
    };

    if (samples == 0) {
        // Exhaustive: count through all selection tables, last entry
        // varying fastest.
        Frame fr = Frame::make(n);
        std::vector<Mask> table(entries, 0);
        auto apply = [&]() {
            std::size_t idx = 0;
            for (int w = 0; w < n; ++w)
                for (Mask x = 0; x <= top; ++x) fr.set_selection(w, x, table[idx++]);
        };
        while (true) {
            apply();
            check_one(fr);
            std::size_t i = entries;
            bool done = false;
            while (i > 0) {
                --i;
                if (table[i] < top) {
                    ++table[i];
                    break;
                }
                table[i] = 0;
                if (i == 0) done = true;
            }
            if (done) break;
        }
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<Mask> dist(0, top);
        Frame fr = Frame::make(n);
        for (std::uint64_t s = 0; s < samples; ++s) {
            for (int w = 0; w < n; ++w)
                for (Mask x = 0; x <= top; ++x) fr.set_selection(w, x, dist(rng));
            check_one(fr);
        }
    }
    return rep;
}

}  // namespace condlogic
