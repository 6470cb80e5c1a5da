#include "pcuic/size.hpp"

namespace pcuic {

std::uint64_t size(const Term& t, const Context* ctx) {
    switch (t.kind()) {
        case Term::Kind::free_var:
        case Term::Kind::bound_var:
        case Term::Kind::sort:
            return 2;
        case Term::Kind::pi:
            return size(t.as<Pi>().domain, ctx) + size(t.as<Pi>().codomain, ctx) + 2;
        case Term::Kind::lam:
            return size(t.as<Lam>().domain, ctx) + size(t.as<Lam>().body, ctx) + 2;
        case Term::Kind::app:
            return size(t.as<App>().function, ctx) + size(t.as<App>().argument, ctx) + 2;
        case Term::Kind::let_in: {
            const auto& l = t.as<LetIn>();
            return size(l.definiens, ctx) + size(l.annotation, ctx) + size(l.body, ctx) + 2;
        }
        case Term::Kind::ind_ref: {
            const InductiveBlock* b = ctx ? ctx->find_block(t.as<IndRef>().block) : nullptr;
            return b ? size(*b, ctx) : 2;
        }
        case Term::Kind::elim: {
            const auto& e = t.as<Elim>();
            const InductiveBlock* b = ctx ? ctx->find_block(e.block) : nullptr;
            std::uint64_t n = size(e.scrutinee, ctx) + (b ? size(*b, ctx) : 2) + 2;
            for (const auto& m : e.motives) n += size(m, ctx);
            for (const auto& c : e.cases) n += size(c, ctx);
            return n;
        }
    }
    return 2;
}

std::uint64_t size(const InductiveBlock& block, const Context* ctx) {
    std::uint64_t n = 2;
    for (const auto& s : block.inds) n += size(s.type, ctx);
    for (const auto& s : block.constrs) n += size(s.type, ctx);
    return n;
}

std::uint64_t size(const Context& ctx) {
    std::uint64_t n = 1;
    for (const auto& entry : ctx.entries()) {
        if (const auto* h = std::get_if<Hyp>(&entry)) {
            n += size(h->type, &ctx);
        } else if (const auto* d = std::get_if<Def>(&entry)) {
            n += size(d->body, &ctx) + size(d->type, &ctx);
        } else {
            n += size(*std::get<BlockEntry>(entry).block, &ctx);
        }
    }
    return n;
}

std::uint64_t size(const Context& ctx, const Term& t) { return size(ctx) + size(t, &ctx) - 1; }

std::uint64_t size(const Context& ctx, const InductiveBlock& block) {
    return size(ctx) + size(block, &ctx) - 1;
}

}  // namespace pcuic
