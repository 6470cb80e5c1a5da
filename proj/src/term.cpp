#include "pcuic/term.hpp"

#include <algorithm>
#include <atomic>
#include <optional>
#include <stdexcept>
#include <unordered_set>

namespace pcuic {

namespace {

std::uint32_t under_binder(std::uint32_t loose) { return loose == 0 ? 0 : loose - 1; }

}  // namespace

template <class T>
Term make_term(T value) {
    auto node = std::make_shared<Term::Node>();
    std::uint32_t loose = 0;
    if constexpr (std::is_same_v<T, BoundVar>) {
        loose = value.index + 1;
    } else if constexpr (std::is_same_v<T, Pi>) {
        loose = std::max(value.domain.loose_bound(), under_binder(value.codomain.loose_bound()));
    } else if constexpr (std::is_same_v<T, Lam>) {
        loose = std::max(value.domain.loose_bound(), under_binder(value.body.loose_bound()));
    } else if constexpr (std::is_same_v<T, LetIn>) {
        loose = std::max({value.definiens.loose_bound(), value.annotation.loose_bound(),
                          under_binder(value.body.loose_bound())});
    } else if constexpr (std::is_same_v<T, App>) {
        loose = std::max(value.function.loose_bound(), value.argument.loose_bound());
    } else if constexpr (std::is_same_v<T, Elim>) {
        loose = value.scrutinee.loose_bound();
        for (const auto& m : value.motives) loose = std::max(loose, m.loose_bound());
        for (const auto& c : value.cases) loose = std::max(loose, c.loose_bound());
    }
    node->value = std::move(value);
    node->loose = loose;
    return Term(std::move(node));
}

Term::Kind Term::kind() const { return static_cast<Kind>(node_->value.index()); }

std::uint32_t Term::loose_bound() const { return node_->loose; }

bool Term::operator==(const Term& other) const { return alpha_eq(*this, other); }

Term mk_var(std::string name) { return make_term(FreeVar{std::move(name)}); }
Term mk_bvar(std::uint32_t index) { return make_term(BoundVar{index}); }
Term mk_sort(Sort sort) { return make_term(SortTerm{sort}); }
Term mk_prop() { return mk_sort(Sort::prop()); }
Term mk_type(std::uint32_t level) { return mk_sort(Sort::type(level)); }

Term mk_pi(std::string binder, Term domain, Term codomain) {
    return make_term(Pi{std::move(binder), std::move(domain), std::move(codomain)});
}

Term mk_arrow(Term domain, Term codomain) {
    return mk_pi("_", std::move(domain), lift_loose(codomain, 1));
}

Term mk_lam(std::string binder, Term domain, Term body) {
    return make_term(Lam{std::move(binder), std::move(domain), std::move(body)});
}

Term mk_let(std::string binder, Term definiens, Term annotation, Term body) {
    return make_term(
        LetIn{std::move(binder), std::move(definiens), std::move(annotation), std::move(body)});
}

Term mk_app(Term function, Term argument) {
    return make_term(App{std::move(function), std::move(argument)});
}

Term mk_apps(Term function, std::span<const Term> arguments) {
    for (const auto& a : arguments) function = mk_app(std::move(function), a);
    return function;
}

Term mk_ind_ref(std::string block, std::string member) {
    return make_term(IndRef{std::move(block), std::move(member)});
}

Term mk_elim(Term scrutinee, std::string block, std::string target, std::vector<Term> motives,
             std::vector<Term> cases) {
    return make_term(Elim{std::move(scrutinee), std::move(block), std::move(target),
                          std::move(motives), std::move(cases)});
}

std::pair<Term, std::vector<Term>> unfold_apps(const Term& t) {
    std::vector<Term> spine;
    Term head = t;
    while (const auto* a = head.get_if<App>()) {
        spine.push_back(a->argument);
        head = a->function;
    }
    std::reverse(spine.begin(), spine.end());
    return {head, std::move(spine)};
}

namespace {

/*
 * Generic bottom-up rewrite. `f(t, depth)` may return a replacement for `t`;
 * otherwise the children are visited with `depth` incremented under binders.
 * Unchanged subterms keep their node so sharing is preserved.
 */
template <class F>
Term rewrite(const Term& t, std::uint32_t depth, F& f) {
    if (auto r = f(t, depth)) return *r;
    switch (t.kind()) {
        case Term::Kind::free_var:
        case Term::Kind::bound_var:
        case Term::Kind::sort:
        case Term::Kind::ind_ref:
            return t;
        case Term::Kind::pi: {
            const auto& p = t.as<Pi>();
            Term d = rewrite(p.domain, depth, f);
            Term c = rewrite(p.codomain, depth + 1, f);
            if (d.same_node(p.domain) && c.same_node(p.codomain)) return t;
            return mk_pi(p.binder, std::move(d), std::move(c));
        }
        case Term::Kind::lam: {
            const auto& l = t.as<Lam>();
            Term d = rewrite(l.domain, depth, f);
            Term b = rewrite(l.body, depth + 1, f);
            if (d.same_node(l.domain) && b.same_node(l.body)) return t;
            return mk_lam(l.binder, std::move(d), std::move(b));
        }
        case Term::Kind::let_in: {
            const auto& l = t.as<LetIn>();
            Term v = rewrite(l.definiens, depth, f);
            Term a = rewrite(l.annotation, depth, f);
            Term b = rewrite(l.body, depth + 1, f);
            if (v.same_node(l.definiens) && a.same_node(l.annotation) && b.same_node(l.body))
                return t;
            return mk_let(l.binder, std::move(v), std::move(a), std::move(b));
        }
        case Term::Kind::app: {
            const auto& a = t.as<App>();
            Term fn = rewrite(a.function, depth, f);
            Term arg = rewrite(a.argument, depth, f);
            if (fn.same_node(a.function) && arg.same_node(a.argument)) return t;
            return mk_app(std::move(fn), std::move(arg));
        }
        case Term::Kind::elim: {
            const auto& e = t.as<Elim>();
            bool changed = false;
            Term s = rewrite(e.scrutinee, depth, f);
            changed |= !s.same_node(e.scrutinee);
            std::vector<Term> motives;
            motives.reserve(e.motives.size());
            for (const auto& m : e.motives) {
                motives.push_back(rewrite(m, depth, f));
                changed |= !motives.back().same_node(m);
            }
            std::vector<Term> cases;
            cases.reserve(e.cases.size());
            for (const auto& c : e.cases) {
                cases.push_back(rewrite(c, depth, f));
                changed |= !cases.back().same_node(c);
            }
            if (!changed) return t;
            return mk_elim(std::move(s), e.block, e.target, std::move(motives), std::move(cases));
        }
    }
    return t;
}

template <class F>
void visit(const Term& t, F& f) {
    if (!f(t)) return;
    switch (t.kind()) {
        case Term::Kind::free_var:
        case Term::Kind::bound_var:
        case Term::Kind::sort:
        case Term::Kind::ind_ref:
            return;
        case Term::Kind::pi:
            visit(t.as<Pi>().domain, f);
            visit(t.as<Pi>().codomain, f);
            return;
        case Term::Kind::lam:
            visit(t.as<Lam>().domain, f);
            visit(t.as<Lam>().body, f);
            return;
        case Term::Kind::let_in:
            visit(t.as<LetIn>().definiens, f);
            visit(t.as<LetIn>().annotation, f);
            visit(t.as<LetIn>().body, f);
            return;
        case Term::Kind::app:
            visit(t.as<App>().function, f);
            visit(t.as<App>().argument, f);
            return;
        case Term::Kind::elim: {
            const auto& e = t.as<Elim>();
            visit(e.scrutinee, f);
            for (const auto& m : e.motives) visit(m, f);
            for (const auto& c : e.cases) visit(c, f);
            return;
        }
    }
}

}  // namespace

std::set<std::string> free_vars(const Term& t) {
    std::set<std::string> out;
    auto f = [&](const Term& u) {
        if (const auto* v = u.get_if<FreeVar>()) out.insert(v->name);
        return true;
    };
    visit(t, f);
    return out;
}

bool occurs_free(const Term& t, const std::string& name) {
    bool found = false;
    auto f = [&](const Term& u) {
        if (found) return false;
        if (const auto* v = u.get_if<FreeVar>(); v && v->name == name) found = true;
        return !found;
    };
    visit(t, f);
    return found;
}

bool mentions_any(const Term& t, const std::set<std::string>& names) {
    if (names.empty()) return false;
    bool found = false;
    auto f = [&](const Term& u) {
        if (found) return false;
        if (const auto* v = u.get_if<FreeVar>(); v && names.contains(v->name)) found = true;
        return !found;
    };
    visit(t, f);
    return found;
}

Term lift_loose(const Term& t, std::uint32_t amount, std::uint32_t cutoff) {
    if (amount == 0 || t.loose_bound() <= cutoff) return t;
    auto f = [&](const Term& u, std::uint32_t depth) -> std::optional<Term> {
        if (u.loose_bound() <= cutoff + depth) return u;
        if (const auto* b = u.get_if<BoundVar>()) return mk_bvar(b->index + amount);
        return std::nullopt;
    };
    return rewrite(t, 0, f);
}

Term subst(const Term& t, std::span<const std::string> vars, std::span<const Term> values) {
    if (vars.size() != values.size())
        throw std::invalid_argument("subst: variable and value sequences differ in length");
    std::unordered_set<std::string_view> seen;
    for (const auto& v : vars)
        if (!seen.insert(v).second)
            throw std::invalid_argument("subst: variable '" + v + "' listed twice");
    if (vars.empty()) return t;
    auto f = [&](const Term& u, std::uint32_t depth) -> std::optional<Term> {
        const auto* v = u.get_if<FreeVar>();
        if (!v) return std::nullopt;
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == v->name) return lift_loose(values[i], depth);
        return u;
    };
    return rewrite(t, 0, f);
}

Term subst(const Term& t, const std::string& var, const Term& value) {
    return subst(t, std::span(&var, 1), std::span(&value, 1));
}

bool alpha_eq(const Term& t, const Term& u) {
    if (t.same_node(u)) return true;
    if (t.kind() != u.kind() || t.loose_bound() != u.loose_bound()) return false;
    switch (t.kind()) {
        case Term::Kind::free_var:
            return t.as<FreeVar>().name == u.as<FreeVar>().name;
        case Term::Kind::bound_var:
            return t.as<BoundVar>().index == u.as<BoundVar>().index;
        case Term::Kind::sort:
            return t.as<SortTerm>().sort == u.as<SortTerm>().sort;
        case Term::Kind::pi:
            return alpha_eq(t.as<Pi>().domain, u.as<Pi>().domain) &&
                   alpha_eq(t.as<Pi>().codomain, u.as<Pi>().codomain);
        case Term::Kind::lam:
            return alpha_eq(t.as<Lam>().domain, u.as<Lam>().domain) &&
                   alpha_eq(t.as<Lam>().body, u.as<Lam>().body);
        case Term::Kind::let_in: {
            const auto& a = t.as<LetIn>();
            const auto& b = u.as<LetIn>();
            return alpha_eq(a.definiens, b.definiens) && alpha_eq(a.annotation, b.annotation) &&
                   alpha_eq(a.body, b.body);
        }
        case Term::Kind::app:
            return alpha_eq(t.as<App>().function, u.as<App>().function) &&
                   alpha_eq(t.as<App>().argument, u.as<App>().argument);
        case Term::Kind::ind_ref:
            return t.as<IndRef>().block == u.as<IndRef>().block &&
                   t.as<IndRef>().member == u.as<IndRef>().member;
        case Term::Kind::elim: {
            const auto& a = t.as<Elim>();
            const auto& b = u.as<Elim>();
            if (a.block != b.block || a.target != b.target ||
                a.motives.size() != b.motives.size() || a.cases.size() != b.cases.size())
                return false;
            if (!alpha_eq(a.scrutinee, b.scrutinee)) return false;
            for (std::size_t i = 0; i < a.motives.size(); ++i)
                if (!alpha_eq(a.motives[i], b.motives[i])) return false;
            for (std::size_t i = 0; i < a.cases.size(); ++i)
                if (!alpha_eq(a.cases[i], b.cases[i])) return false;
            return true;
        }
    }
    return false;
}

Term instantiate(const Term& body, const Term& value) {
    if (body.loose_bound() == 0) return body;
    auto f = [&](const Term& u, std::uint32_t depth) -> std::optional<Term> {
        if (u.loose_bound() <= depth) return u;
        if (const auto* b = u.get_if<BoundVar>()) {
            if (b->index == depth) return lift_loose(value, depth);
            return mk_bvar(b->index - 1);
        }
        return std::nullopt;
    };
    return rewrite(body, 0, f);
}

Term abstract(const Term& t, const std::string& name) {
    auto f = [&](const Term& u, std::uint32_t depth) -> std::optional<Term> {
        if (const auto* v = u.get_if<FreeVar>()) {
            if (v->name == name) return mk_bvar(depth);
            return u;
        }
        if (const auto* b = u.get_if<BoundVar>()) {
            if (b->index >= depth) return mk_bvar(b->index + 1);
            return u;
        }
        return std::nullopt;
    };
    return rewrite(t, 0, f);
}

bool uses_bound_zero(const Term& body) {
    if (body.loose_bound() == 0) return false;
    bool found = false;
    auto f = [&](const Term& u, std::uint32_t depth) -> std::optional<Term> {
        if (found || u.loose_bound() <= depth) return u;
        if (const auto* b = u.get_if<BoundVar>()) {
            if (b->index == depth) found = true;
            return u;
        }
        return std::nullopt;
    };
    rewrite(body, 0, f);
    return found;
}

std::string fresh_name(const std::string& hint) {
    static std::atomic<std::uint64_t> counter{0};
    return "%" + hint + "." + std::to_string(counter.fetch_add(1, std::memory_order_relaxed));
}

bool is_internal_name(const std::string& name) { return !name.empty() && name[0] == '%'; }

}  // namespace pcuic
