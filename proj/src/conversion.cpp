#include "pcuic/conversion.hpp"

#include "pcuic/cumulativity.hpp"
#include "pcuic/inductive.hpp"

namespace pcuic {

namespace {

/// Block and member index of a constructor reference.
struct ConstrRef {
    const InductiveBlock* block;
    const IndRef* ref;
};

std::optional<ConstrRef> as_constructor(const Context& ctx, const Term& head) {
    const auto* r = head.get_if<IndRef>();
    if (!r) return std::nullopt;
    const InductiveBlock* b = ctx.find_block(r->block);
    if (!b || !b->constr_index(r->member)) return std::nullopt;
    return ConstrRef{b, r};
}

/// Tries one ι step on an eliminator; returns the reduct or why it is stuck.
std::variant<Term, IotaStuck> iota(Env& env, const Elim& e) {
    const InductiveBlock* block = env.ctx().find_block(e.block);
    if (!block) return IotaStuck::not_a_constructor;
    WhnfResult s = whnf(env, e.scrutinee);
    auto c = as_constructor(env.ctx(), s.head);
    if (!c) return IotaStuck::not_a_constructor;
    auto index = block->constr_index(c->ref->member);
    if (!index || *index >= e.cases.size()) return IotaStuck::unrelated_block;
    if (c->ref->block != e.block && !ind_leq(env, c->ref->block, e.block))
        return IotaStuck::unrelated_block;
    const Term& ctype = block->constrs[*index].type;
    if (s.spine.size() != count_binders(ctype)) return IotaStuck::partial_constructor;
    return rec_unfold(e.block, *block, e.motives, e.cases, e.cases[*index], s.spine, ctype);
}

}  // namespace

WhnfResult whnf(Env& env, const Term& t) {
    auto unfolded = unfold_apps(t);
    Term head = unfolded.first;
    const auto& spine = unfolded.second;
    // Arguments are consumed from the front; keep them reversed so that is a pop_back.
    std::vector<Term> rev(spine.rbegin(), spine.rend());
    auto reapply = [&](Term h) {
        auto [h2, extra] = unfold_apps(h);
        rev.insert(rev.end(), extra.rbegin(), extra.rend());
        head = std::move(h2);
    };
    for (;;) {
        env.tick();
        if (const auto* l = head.get_if<Lam>()) {
            if (rev.empty()) break;
            Term body = instantiate(l->body, rev.back());
            rev.pop_back();
            reapply(std::move(body));
        } else if (const auto* l = head.get_if<LetIn>()) {
            reapply(instantiate(l->body, l->definiens));
        } else if (const auto* v = head.get_if<FreeVar>()) {
            const auto* entry = env.ctx().lookup(v->name);
            const auto* d = entry ? std::get_if<Def>(entry) : nullptr;
            if (!d) break;
            reapply(d->body);
        } else if (const auto* e = head.get_if<Elim>()) {
            auto r = iota(env, *e);
            if (auto* stuck = std::get_if<IotaStuck>(&r)) {
                return {head, std::vector<Term>(rev.rbegin(), rev.rend()), *stuck};
            }
            reapply(std::get<Term>(std::move(r)));
        } else {
            break;
        }
    }
    return {head, std::vector<Term>(rev.rbegin(), rev.rend()), IotaStuck::none};
}

WhnfResult whnf(const Context& ctx, const Term& t, KernelOptions options) {
    Context work = ctx;
    Env env(work, options);
    return whnf(env, t);
}

Term whnf_term(Env& env, const Term& t) { return whnf(env, t).term(); }

namespace {

Term normalize_binder_body(Env& env, const std::string& hint, const Term& body) {
    std::string x = fresh_name(hint);
    return abstract(normalize(env, instantiate(body, mk_var(x))), x);
}

}  // namespace

Term normalize(Env& env, const Term& t) {
    WhnfResult r = whnf(env, t);
    Term head = r.head;
    if (const auto* p = head.get_if<Pi>()) {
        head = mk_pi(p->binder, normalize(env, p->domain),
                     normalize_binder_body(env, p->binder, p->codomain));
    } else if (const auto* l = head.get_if<Lam>()) {
        head = mk_lam(l->binder, normalize(env, l->domain),
                      normalize_binder_body(env, l->binder, l->body));
    } else if (const auto* e = head.get_if<Elim>()) {
        std::vector<Term> motives, cases;
        for (const auto& m : e->motives) motives.push_back(normalize(env, m));
        for (const auto& c : e->cases) cases.push_back(normalize(env, c));
        head = mk_elim(normalize(env, e->scrutinee), e->block, e->target, std::move(motives),
                       std::move(cases));
    }
    for (const auto& a : r.spine) head = mk_app(std::move(head), normalize(env, a));
    return head;
}

Term normalize(const Context& ctx, const Term& t, KernelOptions options) {
    Context work = ctx;
    Env env(work, options);
    return normalize(env, t);
}

namespace {

bool conv_spines(Env& env, const std::vector<Term>& a, const std::vector<Term>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!conv(env, a[i], b[i])) return false;
    return true;
}

bool conv_under(Env& env, const std::string& hint, const Term& body_a, const Term& body_b) {
    Term x = mk_var(fresh_name(hint));
    return conv(env, instantiate(body_a, x), instantiate(body_b, x));
}

/// Cross-block comparison of references to the same member name.
bool conv_cross_block(Env& env, const IndRef& ra, const std::vector<Term>& sa, const IndRef& rb,
                      const std::vector<Term>& sb) {
    const InductiveBlock* ba = env.ctx().find_block(ra.block);
    const InductiveBlock* bb = env.ctx().find_block(rb.block);
    if (!ba || !bb) return false;
    if (const Term* ta = ba->ind_type(ra.member)) {
        const Term* tb = bb->ind_type(rb.member);
        if (!tb) return false;
        if (sa.size() != count_binders(*ta) || sb.size() != count_binders(*tb)) return false;
        return conv_spines(env, sa, sb) && ind_leq(env, ra.block, rb.block) &&
               ind_leq(env, rb.block, ra.block);
    }
    const Term* ta = ba->constr_type(ra.member);
    const Term* tb = bb->constr_type(rb.member);
    if (!ta || !tb) return false;
    if (sa.size() != count_binders(*ta) || sb.size() != count_binders(*tb)) return false;
    return conv_spines(env, sa, sb) &&
           (ind_leq(env, ra.block, rb.block) || ind_leq(env, rb.block, ra.block));
}

bool conv_whnf(Env& env, const WhnfResult& a, const WhnfResult& b) {
    // η: a λ against anything else compares the body with the other side applied.
    if (const auto* la = a.head.get_if<Lam>(); la && a.spine.empty()) {
        if (const auto* lb = b.head.get_if<Lam>(); lb && b.spine.empty())
            return conv(env, la->domain, lb->domain) && conv_under(env, la->binder, la->body, lb->body);
        Term x = mk_var(fresh_name(la->binder));
        return conv(env, instantiate(la->body, x), mk_app(b.term(), x));
    }
    if (const auto* lb = b.head.get_if<Lam>(); lb && b.spine.empty()) {
        Term x = mk_var(fresh_name(lb->binder));
        return conv(env, mk_app(a.term(), x), instantiate(lb->body, x));
    }
    if (a.head.kind() != b.head.kind()) return false;
    switch (a.head.kind()) {
        case Term::Kind::sort:
            return a.spine.empty() && b.spine.empty() &&
                   a.head.as<SortTerm>().sort == b.head.as<SortTerm>().sort;
        case Term::Kind::pi: {
            const auto& pa = a.head.as<Pi>();
            const auto& pb = b.head.as<Pi>();
            return a.spine.empty() && b.spine.empty() && conv(env, pa.domain, pb.domain) &&
                   conv_under(env, pa.binder, pa.codomain, pb.codomain);
        }
        case Term::Kind::free_var:
            return a.head.as<FreeVar>().name == b.head.as<FreeVar>().name &&
                   conv_spines(env, a.spine, b.spine);
        case Term::Kind::ind_ref: {
            const auto& ra = a.head.as<IndRef>();
            const auto& rb = b.head.as<IndRef>();
            if (ra.member != rb.member) return false;
            if (ra.block == rb.block) return conv_spines(env, a.spine, b.spine);
            return conv_cross_block(env, ra, a.spine, rb, b.spine);
        }
        case Term::Kind::elim: {
            const auto& ea = a.head.as<Elim>();
            const auto& eb = b.head.as<Elim>();
            return ea.block == eb.block && ea.target == eb.target &&
                   conv(env, ea.scrutinee, eb.scrutinee) &&
                   conv_spines(env, ea.motives, eb.motives) &&
                   conv_spines(env, ea.cases, eb.cases) && conv_spines(env, a.spine, b.spine);
        }
        default:
            return false;
    }
}

}  // namespace

bool conv(Env& env, const Term& t, const Term& u) {
    if (alpha_eq(t, u)) return true;
    env.tick();
    WhnfResult a = whnf(env, t);
    WhnfResult b = whnf(env, u);
    if (alpha_eq(a.term(), b.term())) return true;
    return conv_whnf(env, a, b);
}

bool conv(const Context& ctx, const Term& t, const Term& u, KernelOptions options) {
    Context work = ctx;
    Env env(work, options);
    return conv(env, t, u);
}

}  // namespace pcuic
