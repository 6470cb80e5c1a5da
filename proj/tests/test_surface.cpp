#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "pcuic/printer.hpp"
#include "pcuic/surface.hpp"
#include "support.hpp"

using namespace pcuic;
using pcuic::testing::pick;

namespace {

Context sample_context() {
    std::string src = pcuic::testing::nat_block();
    src += pcuic::testing::list_block("L0", 0);
    src += pcuic::testing::list_block("L1", 1);
    src += "axiom a : Prop.\naxiom b : Type@{0}.\n";
    return pcuic::testing::load_source(src);
}

const std::vector<std::string> kBinders = {"x", "y", "a", "nat", "_", "list", "fun", "x1"};

Term random_surface_term(std::mt19937& rng, int fuel, std::uint32_t depth) {
    int choice = fuel <= 0 ? pick(rng, 0, 3) : pick(rng, 0, 9);
    const std::string& hint = kBinders[pick(rng, 0, static_cast<int>(kBinders.size()) - 1)];
    switch (choice) {
        case 0: return pick(rng, 0, 1) ? mk_var("a") : mk_var("add");
        case 1: return pick(rng, 0, 1) ? mk_prop() : mk_type(pick(rng, 0, 3));
        case 2:
            if (depth > 0) return mk_bvar(pick(rng, 0, static_cast<int>(depth) - 1));
            return mk_var("b");
        case 3: {
            static const std::vector<std::pair<std::string, std::string>> refs = {
                {"N", "nat"}, {"N", "zero"}, {"L0", "list"}, {"L1", "nil"}, {"L1", "cons"}, {"L0", "cons"}};
            const auto& r = refs[pick(rng, 0, static_cast<int>(refs.size()) - 1)];
            return mk_ind_ref(r.first, r.second);
        }
        case 4:
            return mk_pi(hint, random_surface_term(rng, fuel - 1, depth),
                         random_surface_term(rng, fuel - 1, depth + 1));
        case 5:
            return mk_lam(hint, random_surface_term(rng, fuel - 1, depth),
                          random_surface_term(rng, fuel - 1, depth + 1));
        case 6:
            return mk_let(hint, random_surface_term(rng, fuel - 2, depth),
                          random_surface_term(rng, fuel - 2, depth),
                          random_surface_term(rng, fuel - 2, depth + 1));
        case 7:
            return mk_elim(random_surface_term(rng, fuel - 2, depth), "N", "nat",
                           {random_surface_term(rng, fuel - 2, depth)},
                           {random_surface_term(rng, fuel - 2, depth),
                            random_surface_term(rng, fuel - 2, depth)});
        default:
            return mk_app(random_surface_term(rng, fuel - 1, depth),
                          random_surface_term(rng, fuel - 1, depth));
    }
}

}  // namespace

TEST(Parse, Prop) {
    Context ctx;
    EXPECT_EQ(parse_term("Prop", ctx), mk_prop());
}

TEST(Parse, ArrowSugar) {
    Context ctx;
    Term t = parse_term("forall x : Type@{0}, x -> x", ctx);
    EXPECT_EQ(t, mk_pi("x", mk_type(0), mk_pi("_", mk_bvar(0), mk_bvar(1))));
}

TEST(Parse, SetIsTypeZero) {
    Context ctx;
    EXPECT_EQ(parse_term("Set", ctx), mk_type(0));
}

TEST(Parse, NatBlock) {
    SourceFile f = parse("inductive N params 0 { nat : Type@{0} := zero : nat; succ : nat -> nat }.");
    ASSERT_EQ(f.declarations.size(), 1u);
    InductiveBlock b = resolve_block(f.declarations[0], Context{});
    EXPECT_EQ(b.param_count, 0u);
    ASSERT_EQ(b.inds.size(), 1u);
    EXPECT_EQ(b.inds[0].name, "nat");
    EXPECT_EQ(b.inds[0].type, mk_type(0));
    ASSERT_EQ(b.constrs.size(), 2u);
    EXPECT_EQ(b.constrs[0].type, mk_var("nat"));
    EXPECT_EQ(b.constrs[1].type, mk_arrow(mk_var("nat"), mk_var("nat")));
}

TEST(Parse, ErrorsCarryPositions) {
    try {
        parse("axiom x : Prop.\naxiom y : (Prop.");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.location().line, 2);
        EXPECT_GT(e.location().column, 1);
    }
    EXPECT_THROW(parse("axiom x : Prop"), ParseError);
    EXPECT_THROW(parse("axiom x : Type@{a}."), ParseError);
    EXPECT_THROW(parse("(* unterminated"), ParseError);
}

TEST(Parse, UnknownIdentifier) {
    Context ctx;
    try {
        parse_term("fun x : Prop => y", ctx);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.location().column, 17);
    }
}

TEST(Parse, NestedCommentsAndUtf8Columns) {
    SourceFile f = parse("(* outer (* inner *) still *) axiom x : Prop. (* λ *) axiom y : Prop.");
    EXPECT_EQ(f.declarations.size(), 2u);
    try {
        parse("(* λλ *) axiom x : ?");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.location().column, 20);
    }
}

TEST(Print, Examples) {
    EXPECT_EQ(print(mk_prop()), "Prop");
    EXPECT_EQ(print(mk_pi("x", mk_prop(), mk_bvar(0))), "forall x : Prop, x");
    EXPECT_EQ(print(mk_pi("x", mk_prop(), mk_prop())), "Prop -> Prop");
    EXPECT_EQ(print(mk_type(3)), "Type@{3}");
}

TEST(Print, AvoidsCapture) {
    // fun x : Prop => x' where the free x must stay distinguishable.
    Term t = mk_lam("x", mk_prop(), mk_app(mk_var("x"), mk_bvar(0)));
    Context ctx;
    ctx.push_hyp("x", mk_pi("_", mk_prop(), mk_prop()));
    EXPECT_EQ(parse_term(print(t, &ctx), ctx), t);
}

TEST(Print, AddRoundTrip) {
    Context ctx = pcuic::testing::load_corpus("nat.pcuic");
    const auto* add = std::get_if<Def>(ctx.lookup("add"));
    ASSERT_NE(add, nullptr);
    EXPECT_EQ(parse_term(print(add->body, &ctx), ctx), add->body);
}

TEST(Print, BlockRoundTrip) {
    Context ctx = pcuic::testing::load_corpus("ftree.pcuic");
    const InductiveBlock* b = ctx.find_block("T");
    ASSERT_NE(b, nullptr);
    std::string text = print(*b, "T");
    SourceFile f = parse(text);
    ASSERT_EQ(f.declarations.size(), 1u);
    InductiveBlock back = resolve_block(f.declarations[0], Context{});
    ASSERT_EQ(back.constrs.size(), b->constrs.size());
    for (std::size_t i = 0; i < back.constrs.size(); ++i)
        EXPECT_EQ(back.constrs[i].type, b->constrs[i].type);
}

TEST(Print, ContextRoundTrip) {
    Context ctx = pcuic::testing::load_corpus("sum.pcuic");
    Context again = pcuic::testing::load_source(print(ctx));
    ASSERT_EQ(again.size(), ctx.size());
    const auto* a = std::get_if<Def>(ctx.lookup("sum_el'"));
    const auto* b = std::get_if<Def>(again.lookup("sum_el'"));
    ASSERT_TRUE(a && b);
    EXPECT_EQ(a->body, b->body);
}

TEST(Corpus, EveryFileParses) {
    for (const auto& entry : std::filesystem::directory_iterator(PCUIC_SOURCE_DIR "/corpus")) {
        if (entry.path().extension() != ".pcuic") continue;
        Report r = check_file(entry.path().string(), {});
        EXPECT_NE(r.status, ReportStatus::parse_error) << entry.path();
    }
}

TEST(SurfaceProperty, PrintParseRoundTrip) {
    Context ctx = sample_context();
    std::mt19937 rng(21);
    for (int i = 0; i < pcuic::testing::property_cases; ++i) {
        Term t = random_surface_term(rng, 6, 0);
        std::string text = print(t, &ctx);
        Term back = parse_term(text, ctx);
        ASSERT_TRUE(alpha_eq(back, t)) << text;
    }
}
