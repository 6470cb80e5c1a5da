#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace pcuic {

/// Concrete universe index `i` of `Type@{i}`.
struct Level {
    std::uint32_t index = 0;

    auto operator<=>(const Level&) const = default;
};

class Sort {
public:
    static Sort prop() { return Sort(true, Level{}); }
    static Sort type(Level level) { return Sort(false, level); }
    static Sort type(std::uint32_t index) { return Sort(false, Level{index}); }

    bool is_prop() const { return prop_; }
    bool is_type() const { return !prop_; }
    /// Only meaningful for `Type@{i}`.
    Level level() const { return level_; }

    bool operator==(const Sort&) const = default;
    auto operator<=>(const Sort&) const = default;

private:
    Sort(bool prop, Level level) : prop_(prop), level_(level) {}

    bool prop_;
    Level level_;
};

/*
 * Terms are locally nameless: variables bound by a binder inside the term are
 * de Bruijn indices (`BoundVar`), everything else is referenced by name
 * (`FreeVar`). Binder names are kept only as printing hints, so structural
 * equality is alpha-equivalence.
 */
class Term {
public:
    struct Node;

    enum class Kind { free_var, bound_var, sort, pi, lam, let_in, app, ind_ref, elim };

    Kind kind() const;

    template <class T>
    const T& as() const;
    template <class T>
    const T* get_if() const;
    template <class T>
    bool is() const { return get_if<T>() != nullptr; }

    /// One past the largest de Bruijn index that escapes this term; 0 when
    /// the term is locally closed.
    std::uint32_t loose_bound() const;

    bool same_node(const Term& other) const { return node_ == other.node_; }

    /// Alpha-equivalence (structural equality ignoring binder hints).
    bool operator==(const Term& other) const;

private:
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    template <class T>
    friend Term make_term(T value);

    std::shared_ptr<const Node> node_;
};

struct FreeVar {
    std::string name;
};

struct BoundVar {
    std::uint32_t index;
};

struct SortTerm {
    Sort sort;
};

struct Pi {
    std::string binder;
    Term domain;
    Term codomain;
};

struct Lam {
    std::string binder;
    Term domain;
    Term body;
};

struct LetIn {
    std::string binder;
    Term definiens;
    Term annotation;
    Term body;
};

struct App {
    Term function;
    Term argument;
};

/// Reference to an inductive type or constructor of a context-bound block.
struct IndRef {
    std::string block;
    std::string member;
};

struct Elim {
    Term scrutinee;
    std::string block;
    std::string target;
    std::vector<Term> motives;
    std::vector<Term> cases;
};

struct Term::Node {
    std::variant<FreeVar, BoundVar, SortTerm, Pi, Lam, LetIn, App, IndRef, Elim> value;
    std::uint32_t loose = 0;
};

template <class T>
const T& Term::as() const {
    return std::get<T>(node_->value);
}

template <class T>
const T* Term::get_if() const {
    return std::get_if<T>(&node_->value);
}

// Smart constructors.
Term mk_var(std::string name);
Term mk_bvar(std::uint32_t index);
Term mk_sort(Sort sort);
Term mk_prop();
Term mk_type(std::uint32_t level);
Term mk_pi(std::string binder, Term domain, Term codomain);
Term mk_arrow(Term domain, Term codomain);
Term mk_lam(std::string binder, Term domain, Term body);
Term mk_let(std::string binder, Term definiens, Term annotation, Term body);
Term mk_app(Term function, Term argument);
Term mk_apps(Term function, std::span<const Term> arguments);
Term mk_ind_ref(std::string block, std::string member);
Term mk_elim(Term scrutinee, std::string block, std::string target, std::vector<Term> motives,
             std::vector<Term> cases);

/// Splits `f a1 ... an` into `f` and `[a1, ..., an]`.
std::pair<Term, std::vector<Term>> unfold_apps(const Term& t);

std::set<std::string> free_vars(const Term& t);
bool occurs_free(const Term& t, const std::string& name);
bool mentions_any(const Term& t, const std::set<std::string>& names);

/// Capture-avoiding simultaneous substitution of named variables.
/// Throws std::invalid_argument when the lengths differ or `vars` repeats a name.
Term subst(const Term& t, std::span<const std::string> vars, std::span<const Term> values);
Term subst(const Term& t, const std::string& var, const Term& value);

bool alpha_eq(const Term& t, const Term& u);

/// Replaces bound variable 0 of `body` with `value` (the body of a binder).
Term instantiate(const Term& body, const Term& value);
/// Turns free occurrences of `name` into bound variable 0 (inverse of instantiate).
Term abstract(const Term& t, const std::string& name);
/// Shifts loose bound variables with index >= `cutoff` by `amount`.
Term lift_loose(const Term& t, std::uint32_t amount, std::uint32_t cutoff = 0);
/// True iff bound variable 0 of a binder body is referenced.
bool uses_bound_zero(const Term& body);

/// Returns a name no parser-produced identifier can collide with.
std::string fresh_name(const std::string& hint = "x");
bool is_internal_name(const std::string& name);

}  // namespace pcuic
