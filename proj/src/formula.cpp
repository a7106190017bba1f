// ============================================================================
// formula.cpp — parser, printer, matching, paths, modal atoms
// ============================================================================

#include "condlogic/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

namespace condlogic {

// ── Constructors ────────────────────────────────────────────────────────────

FormulaPtr Formula::var(std::string n) {
    return std::make_shared<Formula>(Op::Var, std::move(n), nullptr, nullptr);
}
FormulaPtr Formula::metavar(std::string n) {
    return std::make_shared<Formula>(Op::MetaVar, std::move(n), nullptr, nullptr);
}
FormulaPtr Formula::mk_not(FormulaPtr a) {
    return std::make_shared<Formula>(Op::Not, "", std::move(a), nullptr);
}
FormulaPtr Formula::mk_and(FormulaPtr a, FormulaPtr b) {
    return std::make_shared<Formula>(Op::And, "", std::move(a), std::move(b));
}
FormulaPtr Formula::mk_or(FormulaPtr a, FormulaPtr b) {
    return std::make_shared<Formula>(Op::Or, "", std::move(a), std::move(b));
}
FormulaPtr Formula::mk_imp(FormulaPtr a, FormulaPtr b) {
    return std::make_shared<Formula>(Op::Imp, "", std::move(a), std::move(b));
}
FormulaPtr Formula::mk_iff(FormulaPtr a, FormulaPtr b) {
    return std::make_shared<Formula>(Op::Iff, "", std::move(a), std::move(b));
}
FormulaPtr Formula::mk_cond(FormulaPtr a, FormulaPtr b) {
    return std::make_shared<Formula>(Op::Cond, "", std::move(a), std::move(b));
}

// ── Equality / hashing / ordering ───────────────────────────────────────────

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b) return false;
    if (a->op != b->op) return false;
    switch (a->op) {
        case Op::Var:
        case Op::MetaVar:
            return a->name == b->name;
        case Op::Not:
            return equal(a->left, b->left);
        default:
            return equal(a->left, b->left) && equal(a->right, b->right);
    }
}

std::size_t hash_value(const FormulaPtr& f) {
    if (!f) return 0;
    std::size_t h = static_cast<std::size_t>(f->op) * 1099511628211ull;
    auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2); };
    switch (f->op) {
        case Op::Var:
        case Op::MetaVar:
            mix(std::hash<std::string>{}(f->name));
            break;
        case Op::Not:
            mix(hash_value(f->left));
            break;
        default:
            mix(hash_value(f->left));
            mix(hash_value(f->right));
            break;
    }
    return h;
}

static int order_cmp(const FormulaPtr& a, const FormulaPtr& b) {
    if (a.get() == b.get()) return 0;
    if (!a) return b ? -1 : 0;
    if (!b) return 1;
    if (a->op != b->op) return a->op < b->op ? -1 : 1;
    switch (a->op) {
        case Op::Var:
        case Op::MetaVar:
            return a->name.compare(b->name);
        case Op::Not:
            return order_cmp(a->left, b->left);
        default: {
            int c = order_cmp(a->left, b->left);
            return c != 0 ? c : order_cmp(a->right, b->right);
        }
    }
}

bool FormulaLess::operator()(const FormulaPtr& a, const FormulaPtr& b) const {
    return order_cmp(a, b) < 0;
}

// ── Parser ──────────────────────────────────────────────────────────────────
//
//   iff  := imp  ("<->" imp)?
//   imp  := cond ("->"  cond)?
//   cond := disj (">"   disj)?
//   disj := conj ("|"   conj)*
//   conj := neg  ("&"   neg)*
//   neg  := "~" neg | atom
//   atom := lower-ident | UPPER-letter | "(" iff ")"

namespace {

class Parser {
public:
    explicit Parser(std::string_view t) : text_(t) {}

    FormulaPtr run() {
        skip_ws();
        if (at_end()) throw SyntaxError(pos_, "empty input");
        FormulaPtr f = iff();
        skip_ws();
        if (!at_end())
            throw SyntaxError(pos_, "unexpected trailing input");
        return f;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    bool take(std::string_view tok) {
        skip_ws();
        if (text_.substr(pos_, tok.size()) == tok) {
            // `>` must not swallow the head of `->`-like tokens; handled by
            // calling in loosest-first order below, and by checking that `-`
            // begins `->` only.
            pos_ += tok.size();
            return true;
        }
        return false;
    }
    // True if the next token is `>` proper (not part of `->`).
    bool take_cond_arrow() {
        skip_ws();
        if (!at_end() && peek() == '>') { ++pos_; return true; }
        return false;
    }

    FormulaPtr iff() {
        FormulaPtr a = imp();
        if (take("<->")) {
            FormulaPtr b = imp();
            maybe_chain("<->");
            return Formula::mk_iff(a, b);
        }
        return a;
    }
    FormulaPtr imp() {
        FormulaPtr a = cond();
        if (take("->")) {
            FormulaPtr b = cond();
            maybe_chain("->");
            return Formula::mk_imp(a, b);
        }
        return a;
    }
    FormulaPtr cond() {
        FormulaPtr a = disj();
        if (take_cond_arrow()) {
            FormulaPtr b = disj();
            maybe_chain(">");
            return Formula::mk_cond(a, b);
        }
        return a;
    }
    // Reports a chained non-associative operator eagerly, with a clearer
    // message than the fallback "unexpected trailing input".
    void maybe_chain(std::string_view op) {
        skip_ws();
        if (at_end()) return;
        std::string_view rest = text_.substr(pos_);
        bool chained = false;
        if (op == ">") chained = rest[0] == '>';
        else chained = rest.substr(0, op.size()) == op;
        if (chained)
            throw SyntaxError(pos_, "operator '" + std::string(op) +
                                        "' is non-associative; use parentheses");
    }
    FormulaPtr disj() {
        FormulaPtr a = conj();
        while (true) {
            skip_ws();
            if (!at_end() && peek() == '|') { ++pos_; a = Formula::mk_or(a, conj()); }
            else break;
        }
        return a;
    }
    FormulaPtr conj() {
        FormulaPtr a = neg();
        while (true) {
            skip_ws();
            if (!at_end() && peek() == '&') { ++pos_; a = Formula::mk_and(a, neg()); }
            else break;
        }
        return a;
    }
    FormulaPtr neg() {
        skip_ws();
        if (!at_end() && peek() == '~') { ++pos_; return Formula::mk_not(neg()); }
        return atom();
    }
    FormulaPtr atom() {
        skip_ws();
        if (at_end()) throw SyntaxError(pos_, "expected a formula");
        char c = peek();
        if (c == '(') {
            ++pos_;
            FormulaPtr f = iff();
            skip_ws();
            if (at_end() || peek() != ')')
                throw SyntaxError(pos_, "expected ')'");
            ++pos_;
            return f;
        }
        if (std::islower(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            ++pos_;
            while (!at_end()) {
                char d = peek();
                if (std::islower(static_cast<unsigned char>(d)) ||
                    std::isdigit(static_cast<unsigned char>(d)) || d == '_')
                    ++pos_;
                else
                    break;
            }
            return Formula::var(std::string(text_.substr(start, pos_ - start)));
        }
        if (std::isupper(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            ++pos_;
            if (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
                throw SyntaxError(start, "metavariables are single uppercase letters");
            return Formula::metavar(std::string(1, c));
        }
        throw SyntaxError(pos_, std::string("unexpected character '") + c + "'");
    }
};

}  // namespace

FormulaPtr parse(std::string_view text) { return Parser(text).run(); }

FormulaPtr try_parse(std::string_view text, std::string* err) {
    try {
        return Parser(text).run();
    } catch (const SyntaxError& e) {
        if (err) *err = e.what();
        return nullptr;
    }
}

// ── Printer ─────────────────────────────────────────────────────────────────

namespace {

// Binding strength; higher binds tighter.
int prec(const FormulaPtr& f) {
    switch (f->op) {
        case Op::Iff:  return 1;
        case Op::Imp:  return 2;
        case Op::Cond: return 3;
        case Op::Or:   return 4;
        case Op::And:  return 5;
        case Op::Not:  return 6;
        default:       return 7;  // leaves
    }
}

void print_rec(const FormulaPtr& f, std::string& out) {
    auto child = [&out](const FormulaPtr& c, bool parens) {
        if (parens) out += '(';
        print_rec(c, out);
        if (parens) out += ')';
    };
    int p = prec(f);
    switch (f->op) {
        case Op::Var:
        case Op::MetaVar:
            out += f->name;
            return;
        case Op::Not:
            out += '~';
            child(f->left, prec(f->left) < p);
            return;
        case Op::And:
        case Op::Or:
            // Left-associative: the right child needs parentheses at equal
            // precedence, the left does not.
            child(f->left, prec(f->left) < p);
            out += (f->op == Op::And) ? "&" : "|";
            child(f->right, prec(f->right) <= p);
            return;
        case Op::Cond:
        case Op::Imp:
        case Op::Iff:
            // Non-associative: both children need parentheses at equal
            // precedence.
            child(f->left, prec(f->left) <= p);
            out += (f->op == Op::Cond) ? ">" : (f->op == Op::Imp) ? "->" : "<->";
            child(f->right, prec(f->right) <= p);
            return;
    }
}

}  // namespace

std::string to_string(const FormulaPtr& f) {
    std::string out;
    print_rec(f, out);
    return out;
}

// ── Paths ───────────────────────────────────────────────────────────────────

std::string path_to_string(const Path& p) {
    std::string out = "[";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out += ",";
        out += (p[i] == Step::Left) ? "left" : (p[i] == Step::Right) ? "right" : "only";
    }
    return out + "]";
}

FormulaPtr subformula_at(const FormulaPtr& f, const Path& path) {
    FormulaPtr cur = f;
    for (Step s : path) {
        if (!cur) return nullptr;
        switch (s) {
            case Step::Only:
                if (cur->op != Op::Not) return nullptr;
                cur = cur->left;
                break;
            case Step::Left:
                if (cur->op == Op::Not || !cur->left || !cur->right) return nullptr;
                cur = cur->left;
                break;
            case Step::Right:
                if (!cur->right) return nullptr;
                cur = cur->right;
                break;
        }
    }
    return cur;
}

FormulaPtr replace_at(const FormulaPtr& f, const Path& path, const FormulaPtr& repl) {
    if (path.empty()) return repl;
    if (!f) return nullptr;
    Path tail(path.begin() + 1, path.end());
    switch (path.front()) {
        case Step::Only: {
            if (f->op != Op::Not) return nullptr;
            FormulaPtr sub = replace_at(f->left, tail, repl);
            return sub ? Formula::mk_not(sub) : nullptr;
        }
        case Step::Left: {
            if (f->op == Op::Not || !f->left || !f->right) return nullptr;
            FormulaPtr sub = replace_at(f->left, tail, repl);
            if (!sub) return nullptr;
            return std::make_shared<Formula>(f->op, "", sub, f->right);
        }
        case Step::Right: {
            if (!f->right) return nullptr;
            FormulaPtr sub = replace_at(f->right, tail, repl);
            if (!sub) return nullptr;
            return std::make_shared<Formula>(f->op, "", f->left, sub);
        }
    }
    return nullptr;
}

FormulaPtr replace_at_all(const FormulaPtr& f, const std::vector<Path>& paths,
                          const FormulaPtr& repl) {
    for (std::size_t i = 0; i < paths.size(); ++i)
        for (std::size_t j = i + 1; j < paths.size(); ++j) {
            const Path& a = paths[i];
            const Path& b = paths[j];
            const Path& shorter = a.size() <= b.size() ? a : b;
            const Path& longer = a.size() <= b.size() ? b : a;
            if (std::equal(shorter.begin(), shorter.end(), longer.begin()))
                return nullptr;  // one path is a prefix of the other
        }
    FormulaPtr cur = f;
    for (const Path& p : paths) {
        cur = replace_at(cur, p, repl);
        if (!cur) return nullptr;
    }
    return cur;
}

std::vector<Path> find_occurrences(const FormulaPtr& host, const FormulaPtr& needle) {
    std::vector<Path> out;
    Path cur;
    std::function<void(const FormulaPtr&)> walk = [&](const FormulaPtr& f) {
        if (equal(f, needle)) {
            out.push_back(cur);
            return;  // occurrences inside an occurrence are not reported
        }
        switch (f->op) {
            case Op::Var:
            case Op::MetaVar:
                return;
            case Op::Not:
                cur.push_back(Step::Only);
                walk(f->left);
                cur.pop_back();
                return;
            default:
                cur.push_back(Step::Left);
                walk(f->left);
                cur.back() = Step::Right;
                walk(f->right);
                cur.pop_back();
                return;
        }
    };
    walk(host);
    return out;
}

// ── Variables / substitution / matching ─────────────────────────────────────

namespace {
void collect_names(const FormulaPtr& f, Op which, std::set<std::string>& out) {
    if (f->op == which) out.insert(f->name);
    if (f->left) collect_names(f->left, which, out);
    if (f->right) collect_names(f->right, which, out);
}
}  // namespace

bool is_ground(const FormulaPtr& f) {
    if (f->op == Op::MetaVar) return false;
    if (f->left && !is_ground(f->left)) return false;
    if (f->right && !is_ground(f->right)) return false;
    return true;
}

std::vector<std::string> variables(const FormulaPtr& f) {
    std::set<std::string> s;
    collect_names(f, Op::Var, s);
    return {s.begin(), s.end()};
}

std::vector<std::string> metavariables(const FormulaPtr& f) {
    std::set<std::string> s;
    collect_names(f, Op::MetaVar, s);
    return {s.begin(), s.end()};
}

FormulaPtr instantiate(const FormulaPtr& schema, const Subst& s) {
    switch (schema->op) {
        case Op::Var:
            return schema;
        case Op::MetaVar: {
            auto it = s.find(schema->name);
            if (it == s.end())
                throw std::out_of_range("unbound metavariable " + schema->name);
            return it->second;
        }
        case Op::Not:
            return Formula::mk_not(instantiate(schema->left, s));
        default:
            return std::make_shared<Formula>(schema->op, "",
                                             instantiate(schema->left, s),
                                             instantiate(schema->right, s));
    }
}

bool match(const FormulaPtr& schema, const FormulaPtr& target, Subst& s) {
    switch (schema->op) {
        case Op::MetaVar: {
            auto it = s.find(schema->name);
            if (it != s.end()) return equal(it->second, target);
            s.emplace(schema->name, target);
            return true;
        }
        case Op::Var:
            return target->op == Op::Var && target->name == schema->name;
        case Op::Not:
            return target->op == Op::Not && match(schema->left, target->left, s);
        default:
            return target->op == schema->op &&
                   match(schema->left, target->left, s) &&
                   match(schema->right, target->right, s);
    }
}

// ── Modal atoms ─────────────────────────────────────────────────────────────

void collect_modal_atoms(const FormulaPtr& f, std::vector<FormulaPtr>& acc) {
    auto add = [&acc](const FormulaPtr& a) {
        for (const FormulaPtr& e : acc)
            if (equal(e, a)) return;
        acc.push_back(a);
    };
    switch (f->op) {
        case Op::Var:
        case Op::MetaVar:
        case Op::Cond:
            add(f);
            return;
        case Op::Not:
            collect_modal_atoms(f->left, acc);
            return;
        default:
            collect_modal_atoms(f->left, acc);
            collect_modal_atoms(f->right, acc);
            return;
    }
}

std::vector<FormulaPtr> modal_atoms(const FormulaPtr& f) {
    std::vector<FormulaPtr> acc;
    collect_modal_atoms(f, acc);
    return acc;
}

}  // namespace condlogic
