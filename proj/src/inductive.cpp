#include "pcuic/inductive.hpp"

#include <stdexcept>

#include "pcuic/typecheck.hpp"

namespace pcuic {

TelescopeView split_telescope(const Term& t, std::size_t max) {
    TelescopeView view{{}, t};
    while (view.binders.size() < max) {
        const auto* p = view.tail.get_if<Pi>();
        if (!p) break;
        view.binders.push_back({p->binder, p->domain});
        view.tail = p->codomain;
    }
    return view;
}

Term rebuild(const TelescopeView& view) {
    Term out = view.tail;
    for (auto it = view.binders.rbegin(); it != view.binders.rend(); ++it)
        out = mk_pi(it->hint, it->domain, std::move(out));
    return out;
}

std::size_t count_binders(const Term& t) {
    std::size_t n = 0;
    for (const Term* cur = &t; const auto* p = cur->get_if<Pi>(); cur = &p->codomain) ++n;
    return n;
}

namespace {

/// Head variable name of the conclusion of `t`, if it is a free variable.
const FreeVar* conclusion_head(const Term& t) {
    const Term* cur = &t;
    while (const auto* p = cur->get_if<Pi>()) cur = &p->codomain;
    const Term* head = cur;
    while (const auto* a = head->get_if<App>()) head = &a->function;
    return head->get_if<FreeVar>();
}

bool args_avoid(const std::set<std::string>& s, const std::vector<Term>& args) {
    for (const auto& a : args)
        if (mentions_any(a, s)) return false;
    return true;
}

bool applied_member(const std::set<std::string>& s, const Term& t) {
    auto [head, args] = unfold_apps(t);
    const auto* v = head.get_if<FreeVar>();
    return v && s.contains(v->name) && args_avoid(s, args);
}

std::set<std::string> marked_names(const InductiveBlock& block) {
    std::set<std::string> out;
    for (const auto& s : block.inds) out.insert(marked_name(s.name));
    return out;
}

Term qualify_marked(const std::string& block_name, const InductiveBlock& block, const Term& t) {
    std::vector<std::string> vars;
    std::vector<Term> values;
    for (const auto& s : block.inds) {
        vars.push_back(marked_name(s.name));
        values.push_back(mk_ind_ref(block_name, s.name));
    }
    return subst(t, vars, values);
}

const Term& motive_for(const InductiveBlock& block, std::span<const Term> motives,
                       const std::string& marked) {
    for (std::size_t i = 0; i < block.inds.size(); ++i)
        if (marked_name(block.inds[i].name) == marked) return motives[i];
    throw std::logic_error("no motive for " + marked);
}

bool is_recursive_arg(const std::set<std::string>& s, const Pi& p) {
    return mentions_any(p.domain, s) && strict_pos_arg(s, p.domain) &&
           strict_pos(s, p.codomain);
}

std::string binder_hint(const std::string& hint, const char* fallback) {
    return hint == "_" ? fallback : hint;
}

}  // namespace

std::vector<std::string> constrs_of(const InductiveBlock& block, std::string_view d) {
    std::vector<std::string> out;
    for (const auto& c : block.constrs)
        if (const auto* h = conclusion_head(c.type); h && h->name == d) out.push_back(c.name);
    return out;
}

bool strict_pos_arg(const std::set<std::string>& s, const Term& t) {
    const Term* cur = &t;
    while (const auto* p = cur->get_if<Pi>()) {
        if (mentions_any(p->domain, s)) return false;
        cur = &p->codomain;
    }
    return applied_member(s, *cur);
}

bool strict_pos(const std::set<std::string>& s, const Term& t) {
    if (const auto* p = t.get_if<Pi>()) {
        if (mentions_any(p->domain, s))
            return strict_pos_arg(s, p->domain) && strict_pos(s, p->codomain);
        return strict_pos(s, p->codomain);
    }
    return applied_member(s, t);
}

std::string marked_name(std::string_view d) { return "#" + std::string(d); }

Term mark_inductives(const InductiveBlock& block, const Term& t) {
    std::vector<std::string> vars;
    std::vector<Term> values;
    for (const auto& s : block.inds) {
        vars.push_back(s.name);
        values.push_back(mk_var(marked_name(s.name)));
    }
    return subst(t, vars, values);
}

Term qualify(const std::string& block_name, const InductiveBlock& block, const Term& t) {
    std::vector<std::string> vars;
    std::vector<Term> values;
    for (const auto& s : block.inds) {
        vars.push_back(s.name);
        values.push_back(mk_ind_ref(block_name, s.name));
    }
    return subst(t, vars, values);
}

Term motive_type(const std::string& block_name, const InductiveBlock& block, std::string_view d,
                 const Term& sort) {
    const Term* ty = block.ind_type(d);
    if (!ty) throw std::invalid_argument("motive_type: unknown inductive " + std::string(d));
    TelescopeView view = split_telescope(*ty);
    const auto k = static_cast<std::uint32_t>(view.binders.size());
    Term applied = mk_ind_ref(block_name, std::string(d));
    for (std::uint32_t i = 0; i < k; ++i) applied = mk_app(applied, mk_bvar(k - 1 - i));
    view.tail = mk_pi("_", applied, sort);
    return rebuild(view);
}

namespace {

struct ElimBuilder {
    const std::string& block_name;
    const InductiveBlock& block;
    std::span<const Term> motives;
    std::set<std::string> s;

    Term q(const Term& t) const { return qualify_marked(block_name, block, t); }

    /// forall ys : Ys, Q_d ws (p ys) for a recursive argument type.
    Term hypothesis(const Term& arg_type, const Term& p_applied) const {
        if (const auto* pi = arg_type.get_if<Pi>()) {
            std::string y = fresh_name(binder_hint(pi->binder, "y"));
            Term rest = hypothesis(instantiate(pi->codomain, mk_var(y)), mk_app(p_applied, mk_var(y)));
            return mk_pi(binder_hint(pi->binder, "y"), q(pi->domain), abstract(rest, y));
        }
        auto [head, args] = unfold_apps(arg_type);
        Term out = motive_for(block, motives, head.as<FreeVar>().name);
        for (const auto& a : args) out = mk_app(out, q(a));
        return mk_app(out, p_applied);
    }

    Term elim_type(const Term& ctype, const Term& head) const {
        if (const auto* pi = ctype.get_if<Pi>()) {
            const bool recursive = is_recursive_arg(s, *pi);
            if (!recursive && mentions_any(pi->domain, s))
                throw std::logic_error("elim_type: constructor type is not strictly positive");
            std::string hint = binder_hint(pi->binder, recursive ? "p" : "x");
            std::string x = fresh_name(hint);
            Term rest = elim_type(instantiate(pi->codomain, mk_var(x)), mk_app(head, mk_var(x)));
            if (recursive) rest = mk_arrow(hypothesis(pi->domain, mk_var(x)), rest);
            return mk_pi(hint, q(pi->domain), abstract(rest, x));
        }
        auto [h, args] = unfold_apps(ctype);
        const auto* v = h.get_if<FreeVar>();
        if (!v || !s.contains(v->name))
            throw std::logic_error("elim_type: constructor conclusion is not a block inductive");
        Term out = motive_for(block, motives, v->name);
        for (const auto& a : args) out = mk_app(out, q(a));
        return mk_app(out, head);
    }
};

}  // namespace

Term elim_type(const std::string& block_name, const InductiveBlock& block,
               std::span<const Term> motives, const Term& head, const Term& ctype) {
    if (motives.size() != block.inds.size())
        throw std::invalid_argument("elim_type: one motive per inductive type expected");
    ElimBuilder b{block_name, block, motives, marked_names(block)};
    return b.elim_type(mark_inductives(block, ctype), head);
}

Term rec_unfold(const std::string& block_name, const InductiveBlock& block,
                std::span<const Term> motives, std::span<const Term> cases, const Term& f,
                std::span<const Term> args, const Term& ctype) {
    const std::set<std::string> s = marked_names(block);
    auto q = [&](const Term& t) { return qualify_marked(block_name, block, t); };
    std::vector<Term> motive_vec(motives.begin(), motives.end());
    std::vector<Term> case_vec(cases.begin(), cases.end());

    // λ ys : Ys, Elim(b ys; B.d; motives; cases)
    auto eliminate = [&](auto& self, const Term& arg_type, const Term& applied) -> Term {
        if (const auto* pi = arg_type.get_if<Pi>()) {
            std::string hint = binder_hint(pi->binder, "y");
            std::string y = fresh_name(hint);
            Term rest = self(self, instantiate(pi->codomain, mk_var(y)), mk_app(applied, mk_var(y)));
            return mk_lam(hint, q(pi->domain), abstract(rest, y));
        }
        auto [head, unused] = unfold_apps(arg_type);
        std::string target = head.as<FreeVar>().name.substr(1);
        return mk_elim(applied, block_name, target, motive_vec, case_vec);
    };

    Term out = f;
    Term ty = mark_inductives(block, ctype);
    for (const auto& a : args) {
        const auto* pi = ty.get_if<Pi>();
        if (!pi) throw std::logic_error("rec_unfold: more arguments than constructor binders");
        out = mk_app(out, a);
        if (is_recursive_arg(s, *pi)) {
            out = mk_app(out, eliminate(eliminate, pi->domain, a));
        } else if (mentions_any(pi->domain, s)) {
            throw std::logic_error("rec_unfold: constructor type is not strictly positive");
        }
        ty = instantiate(pi->codomain, a);
    }
    if (ty.is<Pi>()) throw std::logic_error("rec_unfold: fewer arguments than constructor binders");
    return out;
}

std::optional<BlockError> check_block_wf(Env& env, const InductiveBlock& block) {
    auto fail = [](BlockErrorKind kind, const std::string& member, std::string message) {
        return std::optional<BlockError>(BlockError{kind, member, std::move(message)});
    };
    const std::size_t n = block.param_count;
    const std::set<std::string> names = block.ind_names();

    std::vector<const Signature*> all;
    for (const auto& s : block.inds) all.push_back(&s);
    for (const auto& s : block.constrs) all.push_back(&s);

    // Distinct names.
    {
        std::set<std::string> seen;
        for (const auto* s : all)
            if (!seen.insert(s->name).second)
                return fail(BlockErrorKind::duplicate_name, s->name, "name declared twice in block");
    }

    // Shared parameter telescope.
    std::optional<TelescopeView> params;
    for (const auto* s : all) {
        TelescopeView view = split_telescope(s->type, n);
        if (view.binders.size() < n)
            return fail(BlockErrorKind::parameter_telescope, s->name,
                        "type has fewer than " + std::to_string(n) + " parameter binders");
        if (!params) {
            params = view;
            continue;
        }
        for (std::size_t i = 0; i < n; ++i)
            if (!alpha_eq(view.binders[i].domain, params->binders[i].domain))
                return fail(BlockErrorKind::parameter_telescope, s->name,
                            "parameter " + std::to_string(i + 1) +
                                " differs from the block's parameter telescope");
    }

    // Parameters are passed through verbatim in constructor conclusions.
    for (const auto& c : block.constrs) {
        TelescopeView view = split_telescope(c.type);
        auto [head, args] = unfold_apps(view.tail);
        const auto* v = head.get_if<FreeVar>();
        if (!v || !names.contains(v->name)) continue;
        const auto k = static_cast<std::uint32_t>(view.binders.size());
        bool ok = args.size() >= n;
        for (std::uint32_t i = 0; ok && i < n; ++i) {
            const auto* b = args[i].get_if<BoundVar>();
            ok = b && b->index == k - 1 - i;
        }
        if (!ok)
            return fail(BlockErrorKind::parametricity, c.name,
                        "conclusion does not pass the block parameters through unchanged");
    }

    // Arities end in a non-Prop sort shared by the whole block.
    std::optional<Sort> block_sort;
    std::vector<Sort> sorts;
    for (const auto& d : block.inds) {
        TelescopeView view = split_telescope(d.type);
        const auto* s = view.tail.get_if<SortTerm>();
        if (!s)
            return fail(BlockErrorKind::arity, d.name, "type does not end in a sort");
        if (s->sort.is_prop())
            return fail(BlockErrorKind::arity, d.name, "inductive types may not live in Prop");
        if (block_sort && *block_sort != s->sort)
            return fail(BlockErrorKind::mixed_sorts, d.name,
                        "all inductive types of a block must share one sort");
        block_sort = s->sort;
        sorts.push_back(s->sort);
    }

    // Every constructor builds one of the block's inductive types.
    for (const auto& c : block.constrs) {
        const auto* h = conclusion_head(c.type);
        if (!h || !names.contains(h->name))
            return fail(BlockErrorKind::not_a_constructor, c.name,
                        "conclusion is not an inductive type of the block");
    }

    for (const auto& c : block.constrs)
        if (!strict_pos(names, c.type))
            return fail(BlockErrorKind::strict_positivity, c.name,
                        "block inductive occurs in a non strictly positive position");

    // Typing premises.
    auto rethrow_fuel = [](const TypeError& e) {
        if (e.kind() == ErrorKind::fuel_exhausted) throw e;
    };
    for (const auto& d : block.inds) {
        try {
            infer_sort(env, d.type);
        } catch (const TypeError& e) {
            rethrow_fuel(e);
            return fail(BlockErrorKind::ill_typed, d.name, e.what());
        }
    }
    Context& ctx = env.ctx();
    const std::size_t base = ctx.size();
    auto unwind = [&] {
        while (ctx.size() > base) ctx.pop();
    };
    for (const auto& d : block.inds) ctx.push_hyp(marked_name(d.name), d.type);
    for (const auto& c : block.constrs) {
        const std::size_t d_index = *block.ind_index(conclusion_head(c.type)->name);
        const std::size_t before = ctx.size();
        Term ty = mark_inductives(block, c.type);
        try {
            for (std::size_t i = 0; i < n; ++i) {
                const auto& pi = ty.as<Pi>();
                std::string p = fresh_name(binder_hint(pi.binder, "p"));
                ctx.push_hyp(p, pi.domain);
                ty = instantiate(pi.codomain, mk_var(p));
            }
            check(env, ty, mk_sort(sorts[d_index]));
        } catch (const TypeError& e) {
            unwind();
            rethrow_fuel(e);
            return fail(BlockErrorKind::ill_typed, c.name, e.what());
        } catch (...) {
            unwind();
            throw;
        }
        while (ctx.size() > before) ctx.pop();
    }
    unwind();
    return std::nullopt;
}

std::optional<BlockError> check_block_wf(const Context& ctx, const InductiveBlock& block) {
    Context work = ctx;
    Env env(work);
    return check_block_wf(env, block);
}

}  // namespace pcuic
