#include "pcuic/printer.hpp"

#include <set>
#include <vector>

namespace pcuic {

namespace {

enum Prec { binder_prec = 0, app_prec = 1, atom_prec = 2 };

const std::set<std::string>& reserved() {
    static const std::set<std::string> k = {"forall", "fun",  "let",  "in",        "Prop",
                                            "Type",   "Set",  "Elim", "axiom",     "def",
                                            "inductive", "params", "_"};
    return k;
}

void collect_members(const Term& t, std::set<std::string>& out) {
    switch (t.kind()) {
        case Term::Kind::ind_ref:
            out.insert(t.as<IndRef>().member);
            return;
        case Term::Kind::pi:
            collect_members(t.as<Pi>().domain, out);
            collect_members(t.as<Pi>().codomain, out);
            return;
        case Term::Kind::lam:
            collect_members(t.as<Lam>().domain, out);
            collect_members(t.as<Lam>().body, out);
            return;
        case Term::Kind::let_in:
            collect_members(t.as<LetIn>().definiens, out);
            collect_members(t.as<LetIn>().annotation, out);
            collect_members(t.as<LetIn>().body, out);
            return;
        case Term::Kind::app:
            collect_members(t.as<App>().function, out);
            collect_members(t.as<App>().argument, out);
            return;
        case Term::Kind::elim: {
            const auto& e = t.as<Elim>();
            collect_members(e.scrutinee, out);
            for (const auto& m : e.motives) collect_members(m, out);
            for (const auto& c : e.cases) collect_members(c, out);
            return;
        }
        default:
            return;
    }
}

std::string display_free(const std::string& name) {
    if (!name.empty() && name[0] == '#') return name.substr(1);
    return name;
}

class Printer {
public:
    Printer(const Context* ctx, const Term& root) : ctx_(ctx) {
        for (const auto& n : free_vars(root)) avoid_.insert(display_free(n));
        collect_members(root, avoid_);
    }

    std::string go(const Term& t, int prec) {
        switch (t.kind()) {
            case Term::Kind::free_var:
                return display_free(t.as<FreeVar>().name);
            case Term::Kind::bound_var: {
                auto i = t.as<BoundVar>().index;
                if (i < names_.size()) return names_[names_.size() - 1 - i];
                return "^" + std::to_string(i);
            }
            case Term::Kind::sort:
                return print(t.as<SortTerm>().sort);
            case Term::Kind::ind_ref:
                return ind_ref(t.as<IndRef>());
            case Term::Kind::app: {
                const auto& a = t.as<App>();
                return paren(prec > app_prec, go(a.function, app_prec) + " " + go(a.argument, atom_prec));
            }
            case Term::Kind::pi: {
                const auto& p = t.as<Pi>();
                if (!uses_bound_zero(p.codomain)) {
                    std::string dom = go(p.domain, app_prec);
                    std::string cod = under("_", p.codomain);
                    return paren(prec > binder_prec, dom + " -> " + cod);
                }
                std::string dom = go(p.domain, binder_prec);
                std::string x = pick(p.binder, true);
                return paren(prec > binder_prec,
                             "forall " + x + " : " + dom + ", " + under(x, p.codomain));
            }
            case Term::Kind::lam: {
                const auto& l = t.as<Lam>();
                std::string dom = go(l.domain, binder_prec);
                std::string x = pick(l.binder, uses_bound_zero(l.body));
                return paren(prec > binder_prec,
                             "fun " + x + " : " + dom + " => " + under(x, l.body));
            }
            case Term::Kind::let_in: {
                const auto& l = t.as<LetIn>();
                std::string value = go(l.definiens, binder_prec);
                std::string ann = go(l.annotation, binder_prec);
                std::string x = pick(l.binder, uses_bound_zero(l.body));
                return paren(prec > binder_prec, "let " + x + " := " + value + " : " + ann +
                                                     " in " + under(x, l.body));
            }
            case Term::Kind::elim: {
                const auto& e = t.as<Elim>();
                std::string out = "Elim(" + go(e.scrutinee, binder_prec) + "; " + e.block + "." +
                                  e.target + "; " + list(e.motives) + "; " + list(e.cases) + ")";
                return out;
            }
        }
        return "?";
    }

private:
    static std::string paren(bool wrap, std::string s) { return wrap ? "(" + s + ")" : s; }

    std::string list(const std::vector<Term>& ts) {
        std::string out;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            if (i) out += ", ";
            out += go(ts[i], binder_prec);
        }
        return out;
    }

    std::string under(const std::string& name, const Term& body) {
        names_.push_back(name);
        std::string out = go(body, binder_prec);
        names_.pop_back();
        return out;
    }

    bool taken(const std::string& n) const {
        if (avoid_.contains(n) || reserved().contains(n)) return true;
        for (const auto& m : names_)
            if (m == n) return true;
        return false;
    }

    std::string pick(const std::string& hint, bool used) {
        if (!used && (hint == "_" || hint.empty())) return "_";
        std::string base = hint == "_" || hint.empty() || is_internal_name(hint) ? "x" : hint;
        if (!taken(base)) return base;
        for (int i = 0;; ++i) {
            std::string candidate = base + std::to_string(i);
            if (!taken(candidate)) return candidate;
        }
    }

    std::string ind_ref(const IndRef& r) const {
        if (ctx_) {
            const ContextEntry* e = ctx_->resolve(r.member);
            const auto* b = e ? std::get_if<BlockEntry>(e) : nullptr;
            if (b && b->name == r.block) return r.member;
        }
        return r.block + "." + r.member;
    }

    const Context* ctx_;
    std::set<std::string> avoid_;
    std::vector<std::string> names_;
};

}  // namespace

std::string print(Sort sort) {
    if (sort.is_prop()) return "Prop";
    return "Type@{" + std::to_string(sort.level().index) + "}";
}

std::string print(const Term& t, const Context* ctx) { return Printer(ctx, t).go(t, binder_prec); }

std::string print(const InductiveBlock& block, const std::string& name, const Context* ctx) {
    auto sigs = [&](const std::vector<Signature>& ss) {
        std::string out;
        for (std::size_t i = 0; i < ss.size(); ++i) {
            if (i) out += "; ";
            out += ss[i].name + " : " + print(ss[i].type, ctx);
        }
        return out;
    };
    std::string inds = sigs(block.inds);
    std::string constrs = sigs(block.constrs);
    return "inductive " + name + " params " + std::to_string(block.param_count) + " { " + inds +
           (inds.empty() ? ":= " : " := ") + constrs + (constrs.empty() ? "}." : " }.");
}

std::string print(const Context& ctx) {
    std::string out;
    Context prefix;
    for (const auto& entry : ctx.entries()) {
        if (const auto* h = std::get_if<Hyp>(&entry)) {
            out += "axiom " + h->name + " : " + print(h->type, &prefix) + ".\n";
        } else if (const auto* d = std::get_if<Def>(&entry)) {
            out += "def " + d->name + " : " + print(d->type, &prefix) + " := " +
                   print(d->body, &prefix) + ".\n";
        } else {
            const auto& b = std::get<BlockEntry>(entry);
            out += print(*b.block, b.name, &prefix) + "\n";
        }
        prefix.push(entry);
    }
    return out;
}

}  // namespace pcuic
