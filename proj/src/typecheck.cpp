#include "pcuic/typecheck.hpp"

#include <algorithm>

#include "pcuic/conversion.hpp"
#include "pcuic/cumulativity.hpp"
#include "pcuic/inductive.hpp"
#include "pcuic/printer.hpp"

namespace pcuic {

Sort prod_rule(Sort s1, Sort s2) {
    if (s2.is_prop()) return Sort::prop();
    if (s1.is_prop()) return s2;
    return Sort::type(std::max(s1.level(), s2.level()));
}

namespace {

/// A readable name for a binder being opened in the current context.
std::string open_name(const Context& ctx, const std::string& hint, const Term& body) {
    std::string base = hint == "_" || hint.empty() ? "x" : hint;
    auto taken = [&](const std::string& n) {
        return ctx.binds(n) || ctx.block_with_member(n) || occurs_free(body, n);
    };
    if (!taken(base)) return base;
    for (int i = 0;; ++i) {
        std::string candidate = base + std::to_string(i);
        if (!taken(candidate)) return candidate;
    }
}

std::string show(const Env& env, const Term& t) { return print(t, &env.ctx()); }

TypeError mismatch(ErrorKind kind, const Env& env, const std::string& what, const Term& expected,
                   const Term& actual) {
    return TypeError(kind,
                     what + ": expected " + show(env, expected) + ", found " + show(env, actual),
                     expected, actual);
}

Term infer_elim(Env& env, const Elim& e) {
    const InductiveBlock* block = env.ctx().find_block(e.block);
    if (!block) throw TypeError(ErrorKind::unbound_variable, "unknown inductive block " + e.block);
    auto k = block->ind_index(e.target);
    if (!k)
        throw TypeError(ErrorKind::unbound_variable,
                        "block " + e.block + " has no inductive type " + e.target);
    if (e.motives.size() != block->inds.size())
        throw TypeError(ErrorKind::elim_motive_mismatch,
                        "eliminator needs " + std::to_string(block->inds.size()) +
                            " motive(s), got " + std::to_string(e.motives.size()));
    if (e.cases.size() != block->constrs.size())
        throw TypeError(ErrorKind::elim_case_mismatch,
                        "eliminator needs " + std::to_string(block->constrs.size()) +
                            " case(s), got " + std::to_string(e.cases.size()));

    // Sort at the end of a motive's type, after the indices and the scrutinee binder.
    auto motive_sort = [&](std::size_t i, const Term& motive_ty) {
        const std::size_t depth = count_binders(block->inds[i].type) + 1;
        Term cur = motive_ty;
        for (std::size_t j = 0; j < depth; ++j) {
            WhnfResult w = whnf(env, cur);
            const auto* p = w.head.get_if<Pi>();
            if (!p || !w.spine.empty())
                throw TypeError(ErrorKind::elim_motive_mismatch,
                                "motive type " + show(env, motive_ty) +
                                    " does not have the shape of a motive for " +
                                    block->inds[i].name);
            cur = instantiate(p->codomain, mk_var(fresh_name(p->binder)));
        }
        WhnfResult w = whnf(env, cur);
        if (!w.head.is<SortTerm>() || !w.spine.empty())
            throw TypeError(ErrorKind::elim_motive_mismatch,
                            "motive type " + show(env, motive_ty) + " does not end in a sort");
        return w.head;
    };

    // The shared result sort comes from the first motive; the others must agree.
    Term motive_ty = infer(env, e.motives[0]);
    const Term sort = motive_sort(0, motive_ty);

    for (std::size_t i = 0; i < e.motives.size(); ++i) {
        Term expected = motive_type(e.block, *block, block->inds[i].name, sort);
        Term actual = i == 0 ? motive_ty : infer(env, e.motives[i]);
        if (i > 0) {
            Term own = motive_sort(i, actual);
            if (!conv(env, own, sort))
                throw mismatch(ErrorKind::elim_motive_mismatch, env,
                               "result sort of the motive for " + block->inds[i].name, sort, own);
        }
        if (!subtype(env, actual, expected).holds)
            throw mismatch(ErrorKind::elim_motive_mismatch, env,
                           "motive for " + block->inds[i].name, expected, actual);
    }

    Term scrut_ty = infer(env, e.scrutinee);
    WhnfResult sw = whnf(env, scrut_ty);
    const auto* ref = sw.head.get_if<IndRef>();
    const InductiveBlock* sblock = ref ? env.ctx().find_block(ref->block) : nullptr;
    const Term* sind = sblock ? sblock->ind_type(ref->member) : nullptr;
    if (!sind || sw.spine.size() != count_binders(*sind))
        throw TypeError(ErrorKind::elim_scrutinee_mismatch,
                        "scrutinee has type " + show(env, scrut_ty) +
                            ", not a fully applied inductive type",
                        mk_ind_ref(e.block, e.target), scrut_ty);
    Term target = mk_apps(mk_ind_ref(e.block, e.target), sw.spine);
    if (!subtype(env, scrut_ty, target).holds)
        throw mismatch(ErrorKind::elim_scrutinee_mismatch, env, "scrutinee", target, scrut_ty);

    for (std::size_t i = 0; i < e.cases.size(); ++i) {
        const auto& c = block->constrs[i];
        Term expected = elim_type(e.block, *block, e.motives, mk_ind_ref(e.block, c.name), c.type);
        Term actual = infer(env, e.cases[i]);
        if (!subtype(env, actual, expected).holds)
            throw mismatch(ErrorKind::elim_case_mismatch, env, "case for " + c.name, expected,
                           actual);
    }
    return mk_app(mk_apps(e.motives[*k], sw.spine), e.scrutinee);
}

}  // namespace

Sort infer_sort(Env& env, const Term& type) {
    Term t = infer(env, type);
    WhnfResult w = whnf(env, t);
    if (const auto* s = w.head.get_if<SortTerm>(); s && w.spine.empty()) return s->sort;
    throw TypeError(ErrorKind::not_a_sort,
                    show(env, type) + " has type " + show(env, t) + ", which is not a sort",
                    mk_type(0), t);
}

Term infer(Env& env, const Term& t) {
    env.tick();
    switch (t.kind()) {
        case Term::Kind::free_var: {
            const auto& name = t.as<FreeVar>().name;
            const ContextEntry* entry = env.ctx().lookup(name);
            if (!entry) throw TypeError(ErrorKind::unbound_variable, "unbound variable " + name);
            if (const auto* h = std::get_if<Hyp>(entry)) return h->type;
            return std::get<Def>(*entry).type;
        }
        case Term::Kind::bound_var:
            throw std::logic_error("infer: term is not locally closed");
        case Term::Kind::sort: {
            Sort s = t.as<SortTerm>().sort;
            return s.is_prop() ? mk_type(0) : mk_type(s.level().index + 1);
        }
        case Term::Kind::pi: {
            const auto& p = t.as<Pi>();
            Sort s1 = infer_sort(env, p.domain);
            std::string x = open_name(env.ctx(), p.binder, p.codomain);
            ScopedHyp scope(env, x, p.domain);
            Sort s2 = infer_sort(env, instantiate(p.codomain, mk_var(x)));
            return mk_sort(prod_rule(s1, s2));
        }
        case Term::Kind::lam: {
            const auto& l = t.as<Lam>();
            infer_sort(env, l.domain);
            std::string x = open_name(env.ctx(), l.binder, l.body);
            ScopedHyp scope(env, x, l.domain);
            Term body_ty = infer(env, instantiate(l.body, mk_var(x)));
            infer_sort(env, body_ty);
            return mk_pi(l.binder, l.domain, abstract(body_ty, x));
        }
        case Term::Kind::let_in: {
            const auto& l = t.as<LetIn>();
            infer_sort(env, l.annotation);
            check(env, l.definiens, l.annotation);
            std::string x = open_name(env.ctx(), l.binder, l.body);
            env.ctx().push_def(x, l.definiens, l.annotation);
            std::optional<Term> body_ty;
            try {
                body_ty = infer(env, instantiate(l.body, mk_var(x)));
            } catch (...) {
                env.ctx().pop();
                throw;
            }
            env.ctx().pop();
            return subst(*body_ty, x, l.definiens);
        }
        case Term::Kind::app: {
            const auto& a = t.as<App>();
            Term fn_ty = infer(env, a.function);
            WhnfResult w = whnf(env, fn_ty);
            const auto* p = w.head.get_if<Pi>();
            if (!p || !w.spine.empty())
                throw TypeError(ErrorKind::not_a_function,
                                show(env, a.function) + " has type " + show(env, fn_ty) +
                                    " and cannot be applied");
            Term arg_ty = infer(env, a.argument);
            bool ok = env.options().strict_app ? conv(env, arg_ty, p->domain)
                                               : subtype(env, arg_ty, p->domain).holds;
            if (!ok)
                throw mismatch(ErrorKind::app_mismatch, env,
                               "argument " + show(env, a.argument), p->domain, arg_ty);
            return instantiate(p->codomain, a.argument);
        }
        case Term::Kind::ind_ref: {
            const auto& r = t.as<IndRef>();
            const InductiveBlock* b = env.ctx().find_block(r.block);
            if (!b) throw TypeError(ErrorKind::unbound_variable, "unknown inductive block " + r.block);
            if (const Term* ty = b->ind_type(r.member)) return qualify(r.block, *b, *ty);
            if (const Term* ty = b->constr_type(r.member)) return qualify(r.block, *b, *ty);
            throw TypeError(ErrorKind::unbound_variable,
                            "block " + r.block + " has no member " + r.member);
        }
        case Term::Kind::elim:
            return infer_elim(env, t.as<Elim>());
    }
    throw std::logic_error("infer: unknown term kind");
}

Term infer(const Context& ctx, const Term& t, KernelOptions options) {
    Context work = ctx;
    Env env(work, options);
    return infer(env, t);
}

void check(Env& env, const Term& t, const Term& type) {
    Term actual = infer(env, t);
    if (subtype(env, actual, type).holds) return;
    WhnfResult a = whnf(env, actual);
    WhnfResult b = whnf(env, type);
    const bool sorts = a.head.is<SortTerm>() && b.head.is<SortTerm>() && a.spine.empty() &&
                       b.spine.empty();
    throw mismatch(sorts ? ErrorKind::universe_inconsistency : ErrorKind::type_mismatch, env,
                   show(env, t), type, actual);
}

void check(const Context& ctx, const Term& t, const Term& type, KernelOptions options) {
    Context work = ctx;
    Env env(work, options);
    check(env, t, type);
}

void extend_checked(Context& ctx, ContextEntry entry, KernelOptions options) {
    Env env(ctx, options);
    const std::size_t base = ctx.size();
    try {
        if (const auto* b = std::get_if<BlockEntry>(&entry)) {
            if (ctx.find_block(b->name))
                throw TypeError(ErrorKind::duplicate_name, "block " + b->name + " already declared");
            if (auto err = check_block_wf(env, *b->block)) throw TypeError(*err);
        } else {
            const std::string& name = entry_name(entry);
            if (ctx.binds(name))
                throw TypeError(ErrorKind::duplicate_name, name + " is already declared");
            if (const auto* h = std::get_if<Hyp>(&entry)) {
                infer_sort(env, h->type);
            } else {
                const auto& d = std::get<Def>(entry);
                infer_sort(env, d.type);
                check(env, d.body, d.type);
            }
        }
    } catch (...) {
        while (ctx.size() > base) ctx.pop();
        throw;
    }
    ctx.push(std::move(entry));
}

std::optional<TypeError> wf_ctx(const Context& ctx, KernelOptions options) {
    Context work;
    for (std::size_t i = 0; i < ctx.entries().size(); ++i) {
        try {
            extend_checked(work, ctx.entries()[i], options);
        } catch (TypeError& e) {
            e.set_entry_index(i);
            return e;
        }
    }
    return std::nullopt;
}

}  // namespace pcuic
