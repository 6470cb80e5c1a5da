#include "pcuic/model_oracle.hpp"

#include <algorithm>
#include <sstream>

#include "pcuic/inductive.hpp"

namespace pcuic {

struct SetValue::Node {
    Kind kind;
    std::uint32_t tag = 0;
    std::vector<SetValue> items;
    std::vector<Pair> pairs;
};

SetValue SetValue::fin(std::vector<SetValue> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    return SetValue(std::make_shared<const Node>(Node{Kind::fin, 0, std::move(elems), {}}));
}

SetValue SetValue::fin(const std::set<SetValue>& elems) {
    return SetValue(std::make_shared<const Node>(
        Node{Kind::fin, 0, std::vector<SetValue>(elems.begin(), elems.end()), {}}));
}

SetValue SetValue::tup(std::vector<SetValue> items) {
    return SetValue(std::make_shared<const Node>(Node{Kind::tup, 0, std::move(items), {}}));
}

SetValue SetValue::tag(std::uint32_t k, std::vector<SetValue> payload) {
    return SetValue(std::make_shared<const Node>(Node{Kind::tag, k, std::move(payload), {}}));
}

SetValue SetValue::graph(std::vector<Pair> pairs) {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    for (std::size_t i = 1; i < pairs.size(); ++i)
        if (pairs[i - 1].first == pairs[i].first)
            throw std::invalid_argument("graph is not functional");
    return SetValue(std::make_shared<const Node>(Node{Kind::graph, 0, {}, std::move(pairs)}));
}

SetValue::Kind SetValue::kind() const { return node_->kind; }
const std::vector<SetValue>& SetValue::items() const { return node_->items; }
std::uint32_t SetValue::tag_index() const { return node_->tag; }
const std::vector<SetValue::Pair>& SetValue::pairs() const { return node_->pairs; }

bool SetValue::contains(const SetValue& x) const {
    if (kind() != Kind::fin) return false;
    return std::binary_search(items().begin(), items().end(), x);
}

std::strong_ordering SetValue::operator<=>(const SetValue& other) const {
    if (node_ == other.node_) return std::strong_ordering::equal;
    const Node& a = *node_;
    const Node& b = *other.node_;
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    if (auto c = a.tag <=> b.tag; c != 0) return c;
    if (auto c = std::lexicographical_compare_three_way(a.items.begin(), a.items.end(),
                                                        b.items.begin(), b.items.end());
        c != 0)
        return c;
    return std::lexicographical_compare_three_way(a.pairs.begin(), a.pairs.end(), b.pairs.begin(),
                                                  b.pairs.end());
}

bool SetValue::operator==(const SetValue& other) const { return (*this <=> other) == 0; }

SetValue von_neumann(std::uint32_t n) {
    std::vector<SetValue> elems;
    for (std::uint32_t i = 0; i < n; ++i) elems.push_back(SetValue::fin(elems));
    return SetValue::fin(std::move(elems));
}

SetValue prop_value() { return von_neumann(2); }

SetValue encode(const std::vector<SetValue::Pair>& graph) {
    std::vector<SetValue> out;
    for (std::size_t i = 0; i < graph.size(); ++i) {
        const auto& [x, y] = graph[i];
        for (std::size_t j = 0; j < i; ++j)
            if (graph[j].first == x && !(graph[j].second == y))
                throw std::invalid_argument("graph is not functional");
        if (y.kind() != SetValue::Kind::fin)
            throw std::invalid_argument("encode needs set-valued functions");
        for (const auto& z : y.items()) out.push_back(SetValue::tup({x, z}));
    }
    return SetValue::fin(std::move(out));
}

SetValue decode(const SetValue& f, const SetValue& x) {
    std::vector<SetValue> out;
    if (f.kind() == SetValue::Kind::fin)
        for (const auto& p : f.items())
            if (p.kind() == SetValue::Kind::tup && p.size() == 2 && p.items()[0] == x)
                out.push_back(p.items()[1]);
    return SetValue::fin(std::move(out));
}

SetValue decode_star(const SetValue& f, const std::vector<SetValue>& args) {
    SetValue cur = f;
    for (const auto& a : args) cur = decode(cur, a);
    return cur;
}

std::optional<SetValue> apply_value(const SetValue& f, const SetValue& x) {
    switch (f.kind()) {
        case SetValue::Kind::graph: {
            const auto& ps = f.pairs();
            auto it = std::lower_bound(ps.begin(), ps.end(), x,
                                       [](const SetValue::Pair& p, const SetValue& k) {
                                           return p.first < k;
                                       });
            if (it == ps.end() || !(it->first == x)) return std::nullopt;
            return it->second;
        }
        case SetValue::Kind::fin: return decode(f, x);
        default: return std::nullopt;
    }
}

SetValue pi_space(const std::vector<SetValue>& domain,
                  const std::function<SetValue(const SetValue&)>& codomain, std::size_t limit) {
    std::vector<SetValue> cods;
    std::size_t total = 1;
    for (const auto& x : domain) {
        cods.push_back(codomain(x));
        if (cods.back().kind() != SetValue::Kind::fin)
            throw OracleError(OracleError::Kind::unsupported_fragment,
                              "product codomain is not a finite set");
        total *= cods.back().size();
        if (total > limit)
            throw OracleError(OracleError::Kind::unsupported_fragment, "product space too large");
    }
    bool set_valued = std::all_of(cods.begin(), cods.end(), [](const SetValue& c) {
        return std::all_of(c.items().begin(), c.items().end(),
                           [](const SetValue& y) { return y.kind() == SetValue::Kind::fin; });
    });
    std::vector<SetValue> out;
    std::vector<std::size_t> choice(domain.size(), 0);
    if (total == 0) return SetValue::empty();
    while (true) {
        std::vector<SetValue::Pair> graph;
        for (std::size_t i = 0; i < domain.size(); ++i)
            graph.emplace_back(domain[i], cods[i].items()[choice[i]]);
        out.push_back(set_valued ? encode(graph) : SetValue::graph(std::move(graph)));
        std::size_t i = 0;
        while (i < domain.size() && ++choice[i] == cods[i].size()) choice[i++] = 0;
        if (i == domain.size()) break;
    }
    return SetValue::fin(std::move(out));
}

std::set<SetValue> phi(const RuleSet& rules, const std::set<SetValue>& current) {
    std::set<SetValue> out;
    for (const auto& r : rules)
        if (std::all_of(r.premises.begin(), r.premises.end(),
                        [&](const SetValue& p) { return current.contains(p); }))
            out.insert(r.conclusion);
    return out;
}

Stages lfp_stages(const RuleSet& rules, std::size_t max_stage) {
    Stages s;
    s.stages.emplace_back();
    while (s.stages.size() <= max_stage) {
        std::set<SetValue> next = s.last();
        next.merge(phi(rules, s.last()));
        if (next == s.last()) {
            s.closed = true;
            return s;
        }
        s.stages.push_back(std::move(next));
    }
    std::set<SetValue> probe = s.last();
    probe.merge(phi(rules, s.last()));
    s.closed = probe == s.last();
    return s;
}

std::string OracleError::label() const {
    switch (kind_) {
        case Kind::unsupported_fragment: return "unsupported-fragment";
        case Kind::depth_exhausted: return "depth-exhausted";
        case Kind::invariant_violation: return "invariant-violation";
    }
    return "?";
}

namespace {

[[noreturn]] void unsupported(const std::string& msg) {
    throw OracleError(OracleError::Kind::unsupported_fragment, msg);
}

const InductiveBlock& find_block(const Fragment& f, const std::string& name) {
    const InductiveBlock* b = f.ctx().find_block(name);
    if (!b) unsupported("unknown block " + name);
    return *b;
}

/// Constructor type with inductive names marked and parameters bound in `env`.
Term open_params(const InductiveBlock& block, const Term& ctype,
                 const std::vector<SetValue>& params, Valuation& env) {
    Term ty = mark_inductives(block, ctype);
    for (const auto& v : params) {
        const auto* p = ty.get_if<Pi>();
        if (!p) unsupported("constructor has fewer products than parameters");
        std::string x = fresh_name(p->binder);
        env.insert_or_assign(x, v);
        ty = instantiate(p->codomain, mk_var(x));
    }
    return ty;
}

std::optional<std::uint32_t> marked_index(const InductiveBlock& block, const Term& head) {
    const auto* v = head.get_if<FreeVar>();
    if (!v) return std::nullopt;
    for (std::size_t i = 0; i < block.inds.size(); ++i)
        if (marked_name(block.inds[i].name) == v->name) return static_cast<std::uint32_t>(i);
    return std::nullopt;
}

/// An applied occurrence `#d q.. u..` of a block member, with its arguments evaluated.
struct Occurrence {
    std::uint32_t ind;
    std::vector<SetValue> params;
    std::vector<SetValue> indices;
};

Occurrence occurrence(Fragment& f, const InductiveBlock& block, const Term& t,
                      const Valuation& env) {
    auto [head, args] = unfold_apps(t);
    auto i = marked_index(block, head);
    if (!i) unsupported("function-typed recursive argument");
    if (args.size() < block.param_count) unsupported("inductive applied to too few parameters");
    Occurrence o{*i, {}, {}};
    for (std::size_t j = 0; j < args.size(); ++j)
        (j < block.param_count ? o.params : o.indices).push_back(f.denote(args[j], env));
    return o;
}

SetValue element_tuple(std::uint32_t i, const std::vector<SetValue>& params,
                       const std::vector<SetValue>& indices, const SetValue& elem) {
    return SetValue::tup({SetValue::tag(i), SetValue::tup(params), SetValue::tup(indices), elem});
}

struct BlockRules {
    Fragment& f;
    const InductiveBlock& block;
    const std::vector<SetValue>& params;
    const std::set<SetValue>& stage;
    RuleSet& out;

    void walk(std::uint32_t k, const Term& ty, Valuation& env, std::vector<SetValue>& args,
              std::vector<SetValue>& premises) {
        std::set<std::string> marks;
        for (const auto& s : block.inds) marks.insert(marked_name(s.name));
        if (const auto* p = ty.get_if<Pi>()) {
            std::string x = fresh_name(p->binder);
            Term rest = instantiate(p->codomain, mk_var(x));
            if (mentions_any(p->domain, marks)) {
                Occurrence o = occurrence(f, block, p->domain, env);
                if (o.params != params) unsupported("recursive argument changes the parameters");
                for (const auto& e : stage) {
                    const auto& parts = e.items();
                    if (!(parts[0] == SetValue::tag(o.ind)) || !(parts[1].items() == o.params) ||
                        !(parts[2].items() == o.indices))
                        continue;
                    env.insert_or_assign(x, parts[3]);
                    args.push_back(parts[3]);
                    premises.push_back(e);
                    walk(k, rest, env, args, premises);
                    premises.pop_back();
                    args.pop_back();
                }
                return;
            }
            SetValue dom = f.denote(p->domain, env);
            if (dom.kind() != SetValue::Kind::fin)
                unsupported("constructor argument type is not a finite set");
            for (const auto& v : dom.items()) {
                env.insert_or_assign(x, v);
                args.push_back(v);
                walk(k, rest, env, args, premises);
                args.pop_back();
            }
            return;
        }
        Occurrence o = occurrence(f, block, ty, env);
        std::vector<SetValue> payload = params;
        payload.insert(payload.end(), args.begin(), args.end());
        std::vector<SetValue> ps = premises;
        std::sort(ps.begin(), ps.end());
        ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
        out.insert(Rule{std::move(ps), element_tuple(o.ind, params, o.indices,
                                                     SetValue::tag(k, std::move(payload)))});
    }
};

}  // namespace

BlockInterp interp_block(Fragment& fragment, const std::string& block_name,
                         const std::vector<SetValue>& params, std::size_t depth) {
    const InductiveBlock& block = find_block(fragment, block_name);
    if (params.size() != block.param_count)
        unsupported("block " + block_name + " expects " + std::to_string(block.param_count) +
                    " parameter values");
    BlockInterp out;
    std::set<SetValue> stage;
    bool closed = false;
    // One round past `depth` only decides whether the last stage is a fixpoint.
    for (std::size_t a = 0;; ++a) {
        BlockRules gen{fragment, block, params, stage, out.rules};
        for (std::size_t k = 0; k < block.constrs.size(); ++k) {
            Valuation env;
            Term ty = open_params(block, block.constrs[k].type, params, env);
            std::vector<SetValue> args, premises;
            gen.walk(static_cast<std::uint32_t>(k), ty, env, args, premises);
        }
        std::set<SetValue> next = stage;
        next.merge(phi(out.rules, stage));
        if (next == stage) {
            closed = true;
            break;
        }
        if (a == depth) break;
        stage = std::move(next);
    }
    out.stages = lfp_stages(out.rules, depth);
    out.stages.closed = closed;
    return out;
}

SetValue inductive_members(const BlockInterp& interp, std::uint32_t i,
                           const std::vector<SetValue>& params,
                           const std::vector<SetValue>& indices) {
    std::vector<SetValue> out;
    for (const auto& e : interp.elements()) {
        const auto& parts = e.items();
        if (parts[0] == SetValue::tag(i) && parts[1].items() == params &&
            parts[2].items() == indices)
            out.push_back(parts[3]);
    }
    return SetValue::fin(std::move(out));
}

namespace {

std::optional<SetValue> apply_star(const SetValue& f, const std::vector<SetValue>& args) {
    SetValue cur = f;
    for (const auto& a : args) {
        auto next = apply_value(cur, a);
        if (!next) return std::nullopt;
        cur = *next;
    }
    return cur;
}

/// Whether `r` lies in the motive's value at the given arguments; undecidable means yes.
bool motive_admits(const std::optional<SetValue>& motive, const std::vector<SetValue>& args,
                   const SetValue& r) {
    if (!motive) return true;
    auto set = apply_star(*motive, args);
    if (!set || set->kind() != SetValue::Kind::fin) return true;
    return set->contains(r);
}

struct ElimRules {
    Fragment& f;
    const InductiveBlock& block;
    const std::vector<std::optional<SetValue>>& motives;
    const std::function<std::optional<SetValue>(std::uint32_t, const std::vector<SetValue>&)>& apply_case;
    const std::set<SetValue>& stage;
    bool params_applied;
    RuleSet& out;

    /// Walks the constructor arguments `cargs`, choosing results for recursive ones.
    void walk(const SetValue& elem, const Term& ty, std::size_t pos, Valuation& env,
              std::vector<SetValue>& fargs, std::vector<SetValue>& premises) {
        const auto& payload = elem.items();
        std::set<std::string> marks;
        for (const auto& s : block.inds) marks.insert(marked_name(s.name));
        if (const auto* p = ty.get_if<Pi>()) {
            if (pos >= payload.size()) unsupported("constructor value has too few arguments");
            const SetValue& c = payload[pos];
            std::string x = fresh_name(p->binder);
            env.insert_or_assign(x, c);
            Term rest = instantiate(p->codomain, mk_var(x));
            fargs.push_back(c);
            if (mentions_any(p->domain, marks)) {
                Occurrence o = occurrence(f, block, p->domain, env);
                std::vector<SetValue> margs;
                if (!params_applied) margs = o.params;
                margs.insert(margs.end(), o.indices.begin(), o.indices.end());
                margs.push_back(c);
                // Pairs <c; r> sort directly after the one-element tuple <c>.
                for (auto it = stage.lower_bound(SetValue::tup({c}));
                     it != stage.end() && it->items()[0] == c; ++it) {
                    const SetValue& pr = *it;
                    const SetValue& r = pr.items()[1];
                    if (!motive_admits(motives[o.ind], margs, r)) continue;
                    fargs.push_back(r);
                    premises.push_back(pr);
                    walk(elem, rest, pos + 1, env, fargs, premises);
                    premises.pop_back();
                    fargs.pop_back();
                }
            } else {
                walk(elem, rest, pos + 1, env, fargs, premises);
            }
            fargs.pop_back();
            return;
        }
        auto result = apply_case(elem.tag_index(), fargs);
        if (!result) return;
        std::vector<SetValue> ps = premises;
        std::sort(ps.begin(), ps.end());
        ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
        out.insert(Rule{std::move(ps), SetValue::tup({elem, *result})});
    }
};

}  // namespace

SetValue interp_elim(Fragment& fragment, const std::string& block_name,
                     const std::vector<std::optional<SetValue>>& motives,
                     const std::vector<SetValue>& cases, const SetValue& scrutinee,
                     std::size_t depth, bool params_applied) {
    const InductiveBlock& block = find_block(fragment, block_name);
    if (cases.size() != block.constrs.size())
        unsupported("eliminator arity does not match block " + block_name);
    return interp_elim(
        fragment, block_name, motives,
        [&](std::uint32_t k, const std::vector<SetValue>& args) { return apply_star(cases[k], args); },
        scrutinee, depth, params_applied);
}

SetValue interp_elim(Fragment& fragment, const std::string& block_name,
                     const std::vector<std::optional<SetValue>>& motives, const CaseFn& cases,
                     const SetValue& scrutinee, std::size_t depth, bool params_applied) {
    const InductiveBlock& block = find_block(fragment, block_name);
    if (motives.size() != block.inds.size())
        unsupported("eliminator arity does not match block " + block_name);
    if (scrutinee.kind() != SetValue::Kind::tag || scrutinee.tag_index() >= block.constrs.size() ||
        scrutinee.size() < block.param_count)
        throw OracleError(OracleError::Kind::invariant_violation,
                          "scrutinee is not a constructor value of " + block_name);
    std::vector<SetValue> params(scrutinee.items().begin(),
                                 scrutinee.items().begin() + block.param_count);
    const BlockInterp& interp = fragment.block(block_name, params);

    std::map<std::pair<std::uint32_t, std::vector<SetValue>>, std::optional<SetValue>> memo;
    std::function<std::optional<SetValue>(std::uint32_t, const std::vector<SetValue>&)> apply_case =
        [&](std::uint32_t k, const std::vector<SetValue>& args) {
            auto key = std::make_pair(k, args);
            if (auto it = memo.find(key); it != memo.end()) return it->second;
            auto r = cases(k, args);
            memo.emplace(std::move(key), r);
            return r;
        };
    RuleSet rules;
    std::set<SetValue> stage;
    for (std::size_t a = 0; a < depth; ++a) {
        ElimRules gen{fragment, block, motives, apply_case, stage, params_applied, rules};
        for (const auto& e : interp.elements()) {
            const SetValue& elem = e.items()[3];
            Valuation env;
            Term ty = open_params(block, block.constrs[elem.tag_index()].type, params, env);
            std::vector<SetValue> fargs, premises;
            if (!params_applied) fargs = params;
            gen.walk(elem, ty, block.param_count, env, fargs, premises);
        }
        std::set<SetValue> next = stage;
        next.merge(phi(rules, stage));
        if (next == stage) break;
        stage = std::move(next);
    }
    Stages s = lfp_stages(rules, depth);
    std::vector<SetValue> results;
    for (const auto& pr : s.last())
        if (pr.items()[0] == scrutinee) results.push_back(pr.items()[1]);
    if (results.empty())
        throw OracleError(OracleError::Kind::depth_exhausted,
                          "no eliminator result for " + render(scrutinee) + " within depth " +
                              std::to_string(depth));
    if (results.size() > 1)
        throw OracleError(OracleError::Kind::invariant_violation,
                          "eliminator relation is not functional at " + render(scrutinee));
    return results.front();
}

const BlockInterp& Fragment::block(const std::string& name, const std::vector<SetValue>& params) {
    auto key = std::make_pair(name, params);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    BlockInterp interp = interp_block(*this, name, params, depth_);
    return cache_.emplace(std::move(key), std::move(interp)).first->second;
}

namespace {

SetValue apply_all(SetValue f, const std::vector<SetValue>& args) {
    for (const auto& a : args) {
        auto next = apply_value(f, a);
        if (!next)
            throw OracleError(OracleError::Kind::depth_exhausted,
                              "argument " + render(a) + " outside the truncated domain");
        f = *next;
    }
    return f;
}

}  // namespace

SetValue Fragment::denote(const Term& t, const Valuation& env) {
    auto [head, spine] = unfold_apps(t);
    auto values = [&](std::size_t from) {
        std::vector<SetValue> out;
        for (std::size_t i = from; i < spine.size(); ++i) out.push_back(denote(spine[i], env));
        return out;
    };

    if (const auto* v = head.get_if<FreeVar>()) {
        if (auto it = env.find(v->name); it != env.end()) return apply_all(it->second, values(0));
        const ContextEntry* e = ctx_.lookup(v->name);
        if (const auto* d = e ? std::get_if<Def>(e) : nullptr) return denote(mk_apps(d->body, spine), env);
        unsupported("variable " + v->name + " has no value");
    }
    if (const auto* l = head.get_if<Lam>()) {
        if (!spine.empty()) {
            Valuation inner = env;
            std::string x = fresh_name(l->binder);
            inner.insert_or_assign(x, denote(spine[0], env));
            std::vector<Term> rest(spine.begin() + 1, spine.end());
            return denote(mk_apps(instantiate(l->body, mk_var(x)), rest), inner);
        }
        SetValue dom = denote(l->domain, env);
        if (dom.kind() != SetValue::Kind::fin) unsupported("function domain is not a finite set");
        std::string x = fresh_name(l->binder);
        Term body = instantiate(l->body, mk_var(x));
        std::vector<SetValue::Pair> graph;
        for (const auto& a : dom.items()) {
            Valuation inner = env;
            inner.insert_or_assign(x, a);
            try {
                graph.emplace_back(a, denote(body, inner));
            } catch (const OracleError& e) {
                if (e.kind() != OracleError::Kind::depth_exhausted) throw;
            }
        }
        return SetValue::graph(std::move(graph));
    }
    if (const auto* l = head.get_if<LetIn>()) {
        Valuation inner = env;
        std::string x = fresh_name(l->binder);
        inner.insert_or_assign(x, denote(l->definiens, env));
        return denote(mk_apps(instantiate(l->body, mk_var(x)), spine), inner);
    }
    if (const auto* s = head.get_if<SortTerm>()) {
        if (!s->sort.is_prop() || !spine.empty()) unsupported("Type universes are not finite");
        return prop_value();
    }
    if (const auto* p = head.get_if<Pi>()) {
        SetValue dom = denote(p->domain, env);
        if (dom.kind() != SetValue::Kind::fin) unsupported("product domain is not a finite set");
        std::string x = fresh_name(p->binder);
        Term cod = instantiate(p->codomain, mk_var(x));
        return pi_space(dom.items(), [&](const SetValue& a) {
            Valuation inner = env;
            inner.insert_or_assign(x, a);
            return denote(cod, inner);
        });
    }
    if (const auto* r = head.get_if<IndRef>()) {
        const InductiveBlock& block = find_block(*this, r->block);
        if (auto k = block.constr_index(r->member)) {
            if (spine.size() != count_binders(block.constrs[*k].type))
                unsupported("constructor " + r->member + " is not fully applied");
            return SetValue::tag(static_cast<std::uint32_t>(*k), values(0));
        }
        auto i = block.ind_index(r->member);
        if (!i || spine.size() != count_binders(block.inds[*i].type))
            unsupported("inductive " + r->member + " is not fully applied");
        std::vector<SetValue> args = values(0);
        std::vector<SetValue> params(args.begin(), args.begin() + block.param_count);
        std::vector<SetValue> indices(args.begin() + block.param_count, args.end());
        return inductive_members(this->block(r->block, params), static_cast<std::uint32_t>(*i),
                                 params, indices);
    }
    if (const auto* e = head.get_if<Elim>()) {
        // Motives and cases are specialised to the scrutinee's parameters before
        // tabulation, so parameters ranging over universes never get enumerated.
        SetValue scrutinee = denote(e->scrutinee, env);
        const InductiveBlock& block = find_block(*this, e->block);
        if (scrutinee.kind() != SetValue::Kind::tag || scrutinee.size() < block.param_count)
            throw OracleError(OracleError::Kind::invariant_violation,
                              "scrutinee is not a constructor value");
        Valuation inner = env;
        std::vector<Term> pvars;
        for (std::size_t i = 0; i < block.param_count; ++i) {
            std::string x = fresh_name("p");
            inner.insert_or_assign(x, scrutinee.items()[i]);
            pvars.push_back(mk_var(x));
        }
        std::vector<std::optional<SetValue>> motives;
        for (const auto& m : e->motives) {
            try {
                motives.push_back(denote(mk_apps(m, pvars), inner));
            } catch (const OracleError& err) {
                if (err.kind() != OracleError::Kind::unsupported_fragment) throw;
                motives.push_back(std::nullopt);
            }
        }
        if (e->cases.size() != block.constrs.size())
            unsupported("eliminator arity does not match block " + e->block);
        // Cases are applied on demand; tabulating them would enumerate whole stages.
        auto cases = [&](std::uint32_t k, const std::vector<SetValue>& args) -> std::optional<SetValue> {
            Valuation at = inner;
            std::vector<Term> spine = pvars;
            for (const auto& a : args) {
                std::string x = fresh_name("a");
                at.insert_or_assign(x, a);
                spine.push_back(mk_var(x));
            }
            try {
                return denote(mk_apps(e->cases[k], spine), at);
            } catch (const OracleError& err) {
                if (err.kind() != OracleError::Kind::depth_exhausted) throw;
                return std::nullopt;
            }
        };
        SetValue result = interp_elim(*this, e->block, motives, cases, scrutinee, depth_, true);
        return apply_all(result, values(0));
    }
    unsupported("open term");
}

namespace {

std::optional<std::size_t> numeral(const SetValue& v) {
    std::size_t n = 0;
    const SetValue* cur = &v;
    while (cur->kind() == SetValue::Kind::tag && cur->tag_index() == 1 && cur->size() == 1) {
        ++n;
        cur = &cur->items()[0];
    }
    if (cur->kind() == SetValue::Kind::tag && cur->tag_index() == 0 && cur->size() == 0) return n;
    return std::nullopt;
}

void render_into(std::ostringstream& out, const SetValue& v) {
    auto list = [&](const std::vector<SetValue>& xs) {
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (i) out << ", ";
            render_into(out, xs[i]);
        }
    };
    switch (v.kind()) {
        case SetValue::Kind::fin:
            out << "{";
            list(v.items());
            out << "}";
            return;
        case SetValue::Kind::tup:
            out << "(";
            list(v.items());
            out << ")";
            return;
        case SetValue::Kind::tag:
            if (auto n = numeral(v)) {
                out << *n;
                return;
            }
            out << "<" << v.tag_index();
            if (v.size()) {
                out << "; ";
                list(v.items());
            }
            out << ">";
            return;
        case SetValue::Kind::graph:
            out << "[";
            for (std::size_t i = 0; i < v.pairs().size(); ++i) {
                if (i) out << ", ";
                render_into(out, v.pairs()[i].first);
                out << " -> ";
                render_into(out, v.pairs()[i].second);
            }
            out << "]";
            return;
    }
}

}  // namespace

std::string render(const SetValue& v) {
    std::ostringstream out;
    render_into(out, v);
    return out.str();
}

}  // namespace pcuic
