#include "pcuic/cumulativity.hpp"

#include <set>

#include "pcuic/conversion.hpp"
#include "pcuic/inductive.hpp"

namespace pcuic {

std::string_view to_string(SubtypeFailure failure) {
    switch (failure) {
        case SubtypeFailure::none: return "none";
        case SubtypeFailure::mismatch: return "mismatch";
        case SubtypeFailure::not_fully_applied: return "not-fully-applied";
        case SubtypeFailure::blocks_unrelated: return "blocks-unrelated";
    }
    return "?";
}

namespace {

SubtypeVerdict holds(std::string rule) { return {true, {std::move(rule)}, SubtypeFailure::none}; }
SubtypeVerdict fails(SubtypeFailure why) { return {false, {}, why}; }

bool is_inductive_ref(const Context& ctx, const Term& head) {
    const auto* r = head.get_if<IndRef>();
    if (!r) return false;
    const InductiveBlock* b = ctx.find_block(r->block);
    return b && b->ind_index(r->member);
}

SubtypeVerdict applied_ind_whnf(Env& env, const WhnfResult& a, const WhnfResult& b) {
    const auto* ra = a.head.get_if<IndRef>();
    const auto* rb = b.head.get_if<IndRef>();
    if (!ra || !rb || ra->member != rb->member) return fails(SubtypeFailure::mismatch);
    const InductiveBlock* ba = env.ctx().find_block(ra->block);
    const InductiveBlock* bb = env.ctx().find_block(rb->block);
    if (!ba || !bb) return fails(SubtypeFailure::mismatch);
    const Term* ta = ba->ind_type(ra->member);
    const Term* tb = bb->ind_type(rb->member);
    if (!ta || !tb) return fails(SubtypeFailure::mismatch);
    if (a.spine.size() != count_binders(*ta) || b.spine.size() != count_binders(*tb))
        return fails(SubtypeFailure::not_fully_applied);
    if (a.spine.size() != b.spine.size()) return fails(SubtypeFailure::mismatch);
    for (std::size_t i = 0; i < a.spine.size(); ++i)
        if (!conv(env, a.spine[i], b.spine[i])) return fails(SubtypeFailure::mismatch);
    if (!ind_leq(env, ra->block, rb->block)) return fails(SubtypeFailure::blocks_unrelated);
    return holds("C-Ind");
}

SubtypeVerdict subtype_whnf(Env& env, const WhnfResult& a, const WhnfResult& b) {
    const auto* sa = a.head.get_if<SortTerm>();
    const auto* sb = b.head.get_if<SortTerm>();
    if (sa && sb && a.spine.empty() && b.spine.empty()) {
        if (sa->sort == sb->sort) return holds("Eq-Cum");
        if (sa->sort.is_prop() && sb->sort.is_type()) return holds("Prop-in-Type");
        if (sa->sort.is_type() && sb->sort.is_type() && sa->sort.level() <= sb->sort.level())
            return holds("Cum-Type");
        return fails(SubtypeFailure::mismatch);
    }
    const auto* pa = a.head.get_if<Pi>();
    const auto* pb = b.head.get_if<Pi>();
    if (pa && pb && a.spine.empty() && b.spine.empty()) {
        if (!conv(env, pa->domain, pb->domain)) return fails(SubtypeFailure::mismatch);
        Term x = mk_var(fresh_name(pa->binder));
        SubtypeVerdict inner =
            subtype(env, instantiate(pa->codomain, x), instantiate(pb->codomain, x));
        if (!inner.holds) return inner;
        inner.trace.insert(inner.trace.begin(), "Cum-Prod");
        return inner;
    }
    if (is_inductive_ref(env.ctx(), a.head) && is_inductive_ref(env.ctx(), b.head)) {
        const auto& ra = a.head.as<IndRef>();
        const auto& rb = b.head.as<IndRef>();
        if (ra.block != rb.block) return applied_ind_whnf(env, a, b);
    }
    if (conv(env, a.term(), b.term())) return holds("Eq-Cum");
    return fails(SubtypeFailure::mismatch);
}

/// Opens `n` leading products of both types with shared fresh variables.
bool open_params(std::size_t n, Term& left, Term& right) {
    for (std::size_t i = 0; i < n; ++i) {
        const auto* pl = left.get_if<Pi>();
        const auto* pr = right.get_if<Pi>();
        if (!pl || !pr) return false;
        Term p = mk_var(fresh_name(pl->binder));
        Term l2 = instantiate(pl->codomain, p);
        Term r2 = instantiate(pr->codomain, p);
        left = std::move(l2);
        right = std::move(r2);
    }
    return true;
}

/// Pairwise subtyping of the remaining products; leaves the conclusions in place.
bool telescopes_leq(Env& env, Term& left, Term& right) {
    for (;;) {
        const auto* pl = left.get_if<Pi>();
        const auto* pr = right.get_if<Pi>();
        if (!pl && !pr) return true;
        if (!pl || !pr) return false;
        if (!subtype(env, pl->domain, pr->domain).holds) return false;
        Term x = mk_var(fresh_name(pl->binder));
        Term l2 = instantiate(pl->codomain, x);
        Term r2 = instantiate(pr->codomain, x);
        left = std::move(l2);
        right = std::move(r2);
    }
}

template <class Sigs>
std::set<std::string> names_of(const Sigs& sigs) {
    std::set<std::string> out;
    for (const auto& s : sigs) out.insert(s.name);
    return out;
}

}  // namespace

SubtypeVerdict subtype(Env& env, const Term& t, const Term& u) {
    if (alpha_eq(t, u)) return holds("Eq-Cum");
    env.tick();
    return subtype_whnf(env, whnf(env, t), whnf(env, u));
}

SubtypeVerdict subtype(const Context& ctx, const Term& t, const Term& u, KernelOptions options) {
    Context work = ctx;
    Env env(work, options);
    return subtype(env, t, u);
}

SubtypeVerdict applied_ind_subtype(Env& env, const Term& t, const Term& u) {
    return applied_ind_whnf(env, whnf(env, t), whnf(env, u));
}

bool ind_leq(Env& env, const InductiveBlock& left, const InductiveBlock& right) {
    if (left.param_count != right.param_count) return false;
    if (names_of(left.inds) != names_of(right.inds)) return false;
    if (names_of(left.constrs) != names_of(right.constrs)) return false;
    const std::size_t n = left.param_count;
    for (const auto& d : left.inds) {
        // Both blocks use the same atom for `d`, so recursive occurrences line up.
        Term l = mark_inductives(left, d.type);
        Term r = mark_inductives(right, *right.ind_type(d.name));
        if (!open_params(n, l, r) || !telescopes_leq(env, l, r)) return false;
        for (const auto& c : constrs_of(left, d.name)) {
            Term lc = mark_inductives(left, *left.constr_type(c));
            Term rc = mark_inductives(right, *right.constr_type(c));
            if (!open_params(n, lc, rc) || !telescopes_leq(env, lc, rc)) return false;
            auto [lh, largs] = unfold_apps(lc);
            auto [rh, rargs] = unfold_apps(rc);
            if (!alpha_eq(lh, rh) || largs.size() != rargs.size()) return false;
            for (std::size_t i = n; i < largs.size(); ++i)
                if (!conv(env, largs[i], rargs[i])) return false;
        }
    }
    return true;
}

bool ind_leq(const Context& ctx, const InductiveBlock& left, const InductiveBlock& right,
             KernelOptions options) {
    Context work = ctx;
    Env env(work, options);
    return ind_leq(env, left, right);
}

bool ind_leq(Env& env, std::string_view left, std::string_view right) {
    if (left == right) return env.ctx().find_block(left) != nullptr;
    const InductiveBlock* l = env.ctx().find_block(left);
    const InductiveBlock* r = env.ctx().find_block(right);
    return l && r && ind_leq(env, *l, *r);
}

}  // namespace pcuic
