#include "pcuic/surface.hpp"

#include <cctype>
#include <charconv>

namespace pcuic {

std::string_view to_string(Declaration::Kind kind) {
    switch (kind) {
        case Declaration::Kind::axiom: return "axiom";
        case Declaration::Kind::def: return "def";
        case Declaration::Kind::inductive: return "inductive";
        case Declaration::Kind::check: return "#check";
        case Declaration::Kind::eval: return "#eval";
        case Declaration::Kind::conv: return "#conv";
        case Declaration::Kind::sub: return "#sub";
    }
    return "?";
}

namespace {

enum class Tok {
    ident,
    qualified,
    nat,
    command,
    lparen,
    rparen,
    lbrace,
    rbrace,
    comma,
    colon,
    coloneq,
    darrow,
    arrow,
    semi,
    dot,
    at,
    eqeq,
    le,
    eof,
};

struct Token {
    Tok kind;
    std::string text;
    std::string member;
    SourceLocation loc;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            SourceLocation loc{line_, col_};
            if (pos_ >= text_.size()) {
                out.push_back({Tok::eof, "", "", loc});
                return out;
            }
            out.push_back(next(loc));
        }
    }

private:
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) != 0x80) {
            ++col_;
        }
        ++pos_;
    }

    void skip_space() {
        for (;;) {
            while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(peek()))) advance();
            if (peek() == '(' && peek(1) == '*') {
                SourceLocation start{line_, col_};
                int depth = 0;
                do {
                    if (pos_ >= text_.size()) throw ParseError("unterminated comment", start);
                    if (peek() == '(' && peek(1) == '*') {
                        ++depth;
                        advance();
                    } else if (peek() == '*' && peek(1) == ')') {
                        --depth;
                        advance();
                    }
                    advance();
                } while (depth > 0);
                continue;
            }
            return;
        }
    }

    std::string ident() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && ident_char(peek())) advance();
        return std::string(text_.substr(start, pos_ - start));
    }

    Token next(SourceLocation loc) {
        char c = peek();
        if (ident_start(c)) {
            std::string name = ident();
            if (peek() == '.' && ident_start(peek(1))) {
                advance();
                std::string member = ident();
                return {Tok::qualified, name, member, loc};
            }
            return {Tok::ident, name, "", loc};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
            return {Tok::nat, std::string(text_.substr(start, pos_ - start)), "", loc};
        }
        if (c == '#' && ident_start(peek(1))) {
            advance();
            return {Tok::command, "#" + ident(), "", loc};
        }
        auto two = [&](Tok kind, const char* text) {
            advance();
            advance();
            return Token{kind, text, "", loc};
        };
        auto one = [&](Tok kind) {
            std::string text(1, c);
            advance();
            return Token{kind, text, "", loc};
        };
        switch (c) {
            case '(': return one(Tok::lparen);
            case ')': return one(Tok::rparen);
            case '{': return one(Tok::lbrace);
            case '}': return one(Tok::rbrace);
            case ',': return one(Tok::comma);
            case ';': return one(Tok::semi);
            case '.': return one(Tok::dot);
            case '@': return one(Tok::at);
            case ':':
                if (peek(1) == '=') return two(Tok::coloneq, ":=");
                return one(Tok::colon);
            case '=':
                if (peek(1) == '>') return two(Tok::darrow, "=>");
                if (peek(1) == '=') return two(Tok::eqeq, "==");
                break;
            case '-':
                if (peek(1) == '>') return two(Tok::arrow, "->");
                break;
            case '<':
                if (peek(1) == '=') return two(Tok::le, "<=");
                break;
            default:
                break;
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "'", loc);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

const std::set<std::string>& keywords() {
    static const std::set<std::string> k = {"forall", "fun",  "let",  "in",        "Prop",
                                            "Type",   "Set",  "Elim", "axiom",     "def",
                                            "inductive", "params"};
    return k;
}

std::string describe(const Token& t) {
    if (t.kind == Tok::eof) return "end of input";
    if (t.kind == Tok::qualified) return "'" + t.text + "." + t.member + "'";
    return "'" + t.text + "'";
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    SourceFile file() {
        SourceFile out;
        while (peek().kind != Tok::eof) out.declarations.push_back(declaration());
        return out;
    }

    SurfaceTerm lone_term() {
        SurfaceTerm t = term();
        if (peek().kind == Tok::dot) take();
        expect(Tok::eof, "end of input");
        return t;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }
    const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    bool is_word(const char* word, std::size_t ahead = 0) const {
        return peek(ahead).kind == Tok::ident && peek(ahead).text == word;
    }

    [[noreturn]] void fail(const std::string& expected) const {
        throw ParseError("expected " + expected + ", found " + describe(peek()), peek().loc);
    }

    const Token& expect(Tok kind, const char* what) {
        if (peek().kind != kind) fail(what);
        return take();
    }

    void expect_word(const char* word) {
        if (!is_word(word)) fail(std::string("'") + word + "'");
        take();
    }

    std::string name() {
        const Token& t = peek();
        if (t.kind != Tok::ident || keywords().contains(t.text)) fail("an identifier");
        return take().text;
    }

    std::size_t natural() {
        const Token& t = expect(Tok::nat, "a natural number");
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
        if (ec != std::errc() || value > 0xFFFFFFFFu)
            throw ParseError("number out of range", t.loc);
        return value;
    }

    Declaration declaration() {
        Declaration d;
        d.loc = peek().loc;
        if (is_word("axiom")) {
            take();
            d.kind = Declaration::Kind::axiom;
            d.name = name();
            expect(Tok::colon, "':'");
            d.type = term();
        } else if (is_word("def")) {
            take();
            d.kind = Declaration::Kind::def;
            d.name = name();
            expect(Tok::colon, "':'");
            d.type = term();
            expect(Tok::coloneq, "':='");
            d.term = term();
        } else if (is_word("inductive")) {
            take();
            d.kind = Declaration::Kind::inductive;
            d.name = name();
            expect_word("params");
            d.params = natural();
            expect(Tok::lbrace, "'{'");
            d.inds = signatures(Tok::coloneq);
            expect(Tok::coloneq, "':='");
            d.constrs = signatures(Tok::rbrace);
            expect(Tok::rbrace, "'}'");
        } else if (peek().kind == Tok::command) {
            const std::string cmd = take().text;
            if (cmd == "#check") {
                d.kind = Declaration::Kind::check;
                d.term = term();
                if (peek().kind == Tok::colon) {
                    take();
                    d.type = term();
                }
            } else if (cmd == "#eval") {
                d.kind = Declaration::Kind::eval;
                d.term = term();
            } else if (cmd == "#conv") {
                d.kind = Declaration::Kind::conv;
                d.term = term();
                expect(Tok::eqeq, "'=='");
                d.rhs = term();
            } else if (cmd == "#sub") {
                d.kind = Declaration::Kind::sub;
                d.term = term();
                expect(Tok::le, "'<='");
                d.rhs = term();
            } else {
                throw ParseError("unknown command " + cmd, d.loc);
            }
        } else {
            fail("a declaration");
        }
        expect(Tok::dot, "'.'");
        return d;
    }

    std::vector<SurfaceSignature> signatures(Tok end) {
        std::vector<SurfaceSignature> out;
        if (peek().kind == end) return out;
        for (;;) {
            SurfaceSignature s;
            s.loc = peek().loc;
            s.name = name();
            expect(Tok::colon, "':'");
            s.type = term();
            out.push_back(std::move(s));
            if (peek().kind != Tok::semi) return out;
            take();
        }
    }

    static SurfaceTerm node(SurfaceTerm::Kind kind, SourceLocation loc) {
        SurfaceTerm t;
        t.kind = kind;
        t.loc = loc;
        return t;
    }

    std::string binder_name() {
        const Token& t = peek();
        if (t.kind == Tok::ident && t.text == "_") return take().text;
        return name();
    }

    struct Binder {
        std::string name;
        SurfaceTerm type;
        SourceLocation loc;
    };

    /// `x y : A` or `(x : A) (y z : B)`.
    std::vector<Binder> binders() {
        std::vector<Binder> out;
        auto group = [&] {
            std::vector<std::pair<std::string, SourceLocation>> names;
            do {
                SourceLocation loc = peek().loc;
                names.emplace_back(binder_name(), loc);
            } while (peek().kind == Tok::ident && !keywords().contains(peek().text));
            expect(Tok::colon, "':'");
            SurfaceTerm ty = term();
            for (auto& [n, loc] : names) out.push_back({n, ty, loc});
        };
        if (peek().kind == Tok::lparen) {
            while (peek().kind == Tok::lparen) {
                take();
                group();
                expect(Tok::rparen, "')'");
            }
        } else {
            group();
        }
        return out;
    }

    SurfaceTerm wrap(SurfaceTerm::Kind kind, std::vector<Binder> bs, SurfaceTerm body) {
        for (auto it = bs.rbegin(); it != bs.rend(); ++it) {
            SurfaceTerm t = node(kind, it->loc);
            t.name = it->name;
            t.children = {std::move(it->type), std::move(body)};
            body = std::move(t);
        }
        return body;
    }

    SurfaceTerm term() {
        SourceLocation loc = peek().loc;
        if (is_word("forall")) {
            take();
            auto bs = binders();
            expect(Tok::comma, "','");
            return wrap(SurfaceTerm::Kind::pi, std::move(bs), term());
        }
        if (is_word("fun")) {
            take();
            auto bs = binders();
            expect(Tok::darrow, "'=>'");
            return wrap(SurfaceTerm::Kind::lam, std::move(bs), term());
        }
        if (is_word("let")) {
            take();
            SurfaceTerm t = node(SurfaceTerm::Kind::let_in, loc);
            t.name = binder_name();
            expect(Tok::coloneq, "':='");
            SurfaceTerm value = term();
            expect(Tok::colon, "':'");
            SurfaceTerm annotation = term();
            expect_word("in");
            t.children = {std::move(value), std::move(annotation), term()};
            return t;
        }
        SurfaceTerm lhs = application();
        if (peek().kind == Tok::arrow) {
            SourceLocation arrow_loc = take().loc;
            SurfaceTerm t = node(SurfaceTerm::Kind::pi, arrow_loc);
            t.name = "_";
            t.children = {std::move(lhs), term()};
            return t;
        }
        return lhs;
    }

    bool atom_start() const {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::qualified:
            case Tok::lparen:
                return true;
            case Tok::ident:
                return !keywords().contains(t.text) || t.text == "Prop" || t.text == "Type" ||
                       t.text == "Set" || t.text == "Elim";
            default:
                return false;
        }
    }

    SurfaceTerm application() {
        if (!atom_start()) fail("a term");
        SurfaceTerm f = atom();
        while (atom_start()) {
            SourceLocation loc = peek().loc;
            SurfaceTerm a = atom();
            SurfaceTerm app = node(SurfaceTerm::Kind::app, loc);
            app.children = {std::move(f), std::move(a)};
            f = std::move(app);
        }
        return f;
    }

    std::vector<SurfaceTerm> term_list() {
        std::vector<SurfaceTerm> out;
        if (peek().kind == Tok::semi || peek().kind == Tok::rparen) return out;
        out.push_back(term());
        while (peek().kind == Tok::comma) {
            take();
            out.push_back(term());
        }
        return out;
    }

    SurfaceTerm atom() {
        const Token& t = peek();
        SourceLocation loc = t.loc;
        if (t.kind == Tok::lparen) {
            take();
            SurfaceTerm inner = term();
            expect(Tok::rparen, "')'");
            return inner;
        }
        if (t.kind == Tok::qualified) {
            SurfaceTerm q = node(SurfaceTerm::Kind::qualified, loc);
            q.name = t.text;
            q.member = t.member;
            take();
            return q;
        }
        if (t.text == "Prop" || t.text == "Set") {
            SurfaceTerm s = node(SurfaceTerm::Kind::sort, loc);
            s.sort = t.text == "Prop" ? Sort::prop() : Sort::type(0);
            take();
            return s;
        }
        if (t.text == "Type") {
            take();
            expect(Tok::at, "'@' (universe levels are written Type@{i})");
            expect(Tok::lbrace, "'{'");
            SurfaceTerm s = node(SurfaceTerm::Kind::sort, loc);
            s.sort = Sort::type(static_cast<std::uint32_t>(natural()));
            expect(Tok::rbrace, "'}'");
            return s;
        }
        if (t.text == "Elim") {
            take();
            SurfaceTerm e = node(SurfaceTerm::Kind::elim, loc);
            expect(Tok::lparen, "'('");
            SurfaceTerm scrutinee = term();
            expect(Tok::semi, "';'");
            if (peek().kind == Tok::qualified) {
                e.name = peek().text;
                e.member = peek().member;
                take();
            } else {
                e.member = name();
            }
            expect(Tok::semi, "';'");
            auto motives = term_list();
            expect(Tok::semi, "';'");
            auto cases = term_list();
            expect(Tok::rparen, "')'");
            e.motive_count = motives.size();
            e.children.push_back(std::move(scrutinee));
            for (auto& m : motives) e.children.push_back(std::move(m));
            for (auto& c : cases) e.children.push_back(std::move(c));
            return e;
        }
        if (t.text == "_") throw ParseError("'_' can only name a binder", loc);
        SurfaceTerm v = node(SurfaceTerm::Kind::ident, loc);
        v.name = name();
        return v;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

class Resolver {
public:
    Resolver(const Context& ctx, const std::set<std::string>& block_locals)
        : ctx_(ctx), block_locals_(block_locals) {}

    Term run(const SurfaceTerm& s) {
        switch (s.kind) {
            case SurfaceTerm::Kind::ident:
                return ident(s);
            case SurfaceTerm::Kind::qualified: {
                const InductiveBlock* b = ctx_.find_block(s.name);
                if (!b) throw ParseError("unknown inductive block " + s.name, s.loc);
                if (!b->has_member(s.member))
                    throw ParseError("block " + s.name + " has no member " + s.member, s.loc);
                return mk_ind_ref(s.name, s.member);
            }
            case SurfaceTerm::Kind::sort:
                return mk_sort(s.sort);
            case SurfaceTerm::Kind::pi:
            case SurfaceTerm::Kind::lam: {
                Term domain = run(s.children[0]);
                locals_.push_back(s.name);
                Term body = run(s.children[1]);
                locals_.pop_back();
                return s.kind == SurfaceTerm::Kind::pi ? mk_pi(s.name, domain, body)
                                                       : mk_lam(s.name, domain, body);
            }
            case SurfaceTerm::Kind::let_in: {
                Term value = run(s.children[0]);
                Term annotation = run(s.children[1]);
                locals_.push_back(s.name);
                Term body = run(s.children[2]);
                locals_.pop_back();
                return mk_let(s.name, value, annotation, body);
            }
            case SurfaceTerm::Kind::app:
                return mk_app(run(s.children[0]), run(s.children[1]));
            case SurfaceTerm::Kind::elim:
                return elim(s);
        }
        throw ParseError("unsupported term", s.loc);
    }

private:
    Term ident(const SurfaceTerm& s) {
        for (std::size_t i = locals_.size(); i-- > 0;)
            if (locals_[i] == s.name)
                return mk_bvar(static_cast<std::uint32_t>(locals_.size() - 1 - i));
        if (block_locals_.contains(s.name)) return mk_var(s.name);
        const ContextEntry* entry = ctx_.resolve(s.name);
        if (!entry) throw ParseError("unknown identifier " + s.name, s.loc);
        if (const auto* b = std::get_if<BlockEntry>(entry)) return mk_ind_ref(b->name, s.name);
        return mk_var(s.name);
    }

    Term elim(const SurfaceTerm& s) {
        std::string block = s.name;
        if (block.empty()) {
            const BlockEntry* entry = ctx_.block_with_member(s.member);
            if (!entry) throw ParseError("unknown inductive type " + s.member, s.loc);
            block = entry->name;
        }
        const InductiveBlock* b = ctx_.find_block(block);
        if (!b) throw ParseError("unknown inductive block " + block, s.loc);
        if (!b->ind_index(s.member))
            throw ParseError("block " + block + " has no inductive type " + s.member, s.loc);
        Term scrutinee = run(s.children[0]);
        std::vector<Term> motives, cases;
        for (std::size_t i = 1; i < s.children.size(); ++i)
            (i <= s.motive_count ? motives : cases).push_back(run(s.children[i]));
        return mk_elim(scrutinee, block, s.member, std::move(motives), std::move(cases));
    }

    const Context& ctx_;
    const std::set<std::string>& block_locals_;
    std::vector<std::string> locals_;
};

}  // namespace

SourceFile parse(std::string_view text) { return Parser(Lexer(text).run()).file(); }

SurfaceTerm parse_surface_term(std::string_view text) {
    return Parser(Lexer(text).run()).lone_term();
}

Term resolve(const SurfaceTerm& s, const Context& ctx, const std::set<std::string>& block_locals) {
    return Resolver(ctx, block_locals).run(s);
}

InductiveBlock resolve_block(const Declaration& decl, const Context& ctx) {
    InductiveBlock block;
    block.param_count = decl.params;
    std::set<std::string> locals;
    for (const auto& s : decl.inds) locals.insert(s.name);
    for (const auto& s : decl.inds) block.inds.push_back({s.name, resolve(s.type, ctx, locals)});
    for (const auto& s : decl.constrs)
        block.constrs.push_back({s.name, resolve(s.type, ctx, locals)});
    return block;
}

Term parse_term(std::string_view text, const Context& ctx) {
    return resolve(parse_surface_term(text), ctx);
}

}  // namespace pcuic
