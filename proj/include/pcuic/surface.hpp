#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pcuic/context.hpp"
#include "pcuic/error.hpp"
#include "pcuic/term.hpp"

namespace pcuic {

/// Parsed but not yet name-resolved term.
struct SurfaceTerm {
    enum class Kind { ident, qualified, sort, pi, lam, let_in, app, elim };

    Kind kind = Kind::ident;
    SourceLocation loc;
    /// ident: the name; qualified: block; binders: binder name; elim: block (may be empty).
    std::string name;
    /// qualified: member; elim: target inductive.
    std::string member;
    Sort sort = Sort::prop();
    /// pi/lam: [domain, body]; let_in: [definiens, annotation, body]; app: [function, argument];
    /// elim: [scrutinee, motives..., cases...].
    std::vector<SurfaceTerm> children;
    std::size_t motive_count = 0;
};

struct SurfaceSignature {
    std::string name;
    SurfaceTerm type;
    SourceLocation loc;
};

struct Declaration {
    enum class Kind { axiom, def, inductive, check, eval, conv, sub };

    Kind kind = Kind::axiom;
    SourceLocation loc;
    std::string name;
    /// axiom/def: declared type; check: optional expected type.
    std::optional<SurfaceTerm> type;
    /// def: body; check/eval: the term; conv/sub: left-hand side.
    std::optional<SurfaceTerm> term;
    /// conv/sub: right-hand side.
    std::optional<SurfaceTerm> rhs;
    std::size_t params = 0;
    std::vector<SurfaceSignature> inds;
    std::vector<SurfaceSignature> constrs;
};

struct SourceFile {
    std::vector<Declaration> declarations;
};

std::string_view to_string(Declaration::Kind kind);

/// Throws ParseError with the position of the first lexical or syntax error.
SourceFile parse(std::string_view text);
SurfaceTerm parse_surface_term(std::string_view text);

/*
 * Name resolution against `ctx`: binder names first, then `block_locals`
 * (raw inductive names while elaborating a block body), then the latest
 * context entry binding the name. Throws ParseError for unknown names.
 */
Term resolve(const SurfaceTerm& s, const Context& ctx,
             const std::set<std::string>& block_locals = {});
InductiveBlock resolve_block(const Declaration& decl, const Context& ctx);

/// parse_surface_term followed by resolve.
Term parse_term(std::string_view text, const Context& ctx);

}  // namespace pcuic
