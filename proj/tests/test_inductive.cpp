#include <gtest/gtest.h>

#include <random>

#include "pcuic/conversion.hpp"
#include "pcuic/inductive.hpp"
#include "pcuic/printer.hpp"
#include "pcuic/surface.hpp"
#include "pcuic/typecheck.hpp"
#include "support.hpp"

using namespace pcuic;
using pcuic::testing::pick;

namespace {

InductiveBlock block_of(const std::string& text, const Context& ctx = {}) {
    SourceFile f = parse(text);
    return resolve_block(f.declarations.at(0), ctx);
}

std::optional<BlockErrorKind> wf_kind(const std::string& text, const Context& ctx = {}) {
    auto err = check_block_wf(ctx, block_of(text, ctx));
    if (!err) return std::nullopt;
    return err->kind;
}

// Independent reading of the positivity rules, written against raw term shapes.
bool has_name(const Term& t, const std::set<std::string>& s) {
    switch (t.kind()) {
        case Term::Kind::free_var: return s.contains(t.as<FreeVar>().name);
        case Term::Kind::pi: return has_name(t.as<Pi>().domain, s) || has_name(t.as<Pi>().codomain, s);
        case Term::Kind::lam: return has_name(t.as<Lam>().domain, s) || has_name(t.as<Lam>().body, s);
        case Term::Kind::app: return has_name(t.as<App>().function, s) || has_name(t.as<App>().argument, s);
        default: return false;
    }
}

bool ref_head_ok(const Term& t, const std::set<std::string>& s) {
    const Term* cur = &t;
    while (const auto* a = cur->get_if<App>()) {
        if (has_name(a->argument, s)) return false;
        cur = &a->function;
    }
    const auto* v = cur->get_if<FreeVar>();
    return v && s.contains(v->name);
}

bool ref_arg(const Term& t, const std::set<std::string>& s) {
    const Term* cur = &t;
    while (const auto* p = cur->get_if<Pi>()) {
        if (has_name(p->domain, s)) return false;
        cur = &p->codomain;
    }
    return ref_head_ok(*cur, s);
}

bool ref_pos(const Term& t, const std::set<std::string>& s) {
    if (const auto* p = t.get_if<Pi>()) {
        if (has_name(p->domain, s)) return ref_arg(p->domain, s) && ref_pos(p->codomain, s);
        return ref_pos(p->codomain, s);
    }
    return ref_head_ok(t, s);
}

Term random_type(std::mt19937& rng, int fuel) {
    int c = fuel <= 0 ? pick(rng, 0, 2) : pick(rng, 0, 5);
    switch (c) {
        case 0: return mk_var("d");
        case 1: return mk_var(pick(rng, 0, 1) ? "A" : "e");
        case 2: return mk_app(mk_var(pick(rng, 0, 2) ? "d" : "e"), mk_var(pick(rng, 0, 1) ? "d" : "A"));
        case 3:
        case 4: return mk_arrow(random_type(rng, fuel - 1), random_type(rng, fuel - 1));
        default: return mk_pi("y", random_type(rng, fuel - 1), mk_app(random_type(rng, fuel - 1), mk_bvar(0)));
    }
}

}  // namespace

TEST(ConstrsOf, Examples) {
    Context nat = pcuic::testing::load_corpus("nat.pcuic");
    Context tree = pcuic::testing::load_corpus("ftree.pcuic");
    using V = std::vector<std::string>;
    EXPECT_EQ(constrs_of(*nat.find_block("N"), "nat"), (V{"zero", "succ"}));
    EXPECT_EQ(constrs_of(*tree.find_block("T"), "Forest"), (V{"Fnil", "Fcons"}));
    EXPECT_TRUE(constrs_of(*nat.find_block("N"), "bogus").empty());
}

TEST(StrictPos, Examples) {
    std::set<std::string> nat = {"nat"};
    EXPECT_TRUE(strict_pos(nat, mk_arrow(mk_var("nat"), mk_var("nat"))));
    std::set<std::string> d = {"d"};
    EXPECT_FALSE(strict_pos(d, mk_arrow(mk_arrow(mk_var("d"), mk_var("d")), mk_var("d"))));
    std::set<std::string> tree = {"Forest", "FTree"};
    EXPECT_TRUE(strict_pos(tree, mk_arrow(mk_var("FTree"), mk_arrow(mk_var("Forest"), mk_var("Forest")))));
}

TEST(StrictPos, FunctionArgumentsReturningTheType) {
    std::set<std::string> d = {"d"};
    // (nat -> d) -> d is strictly positive; d applied to d is not.
    EXPECT_TRUE(strict_pos(d, mk_arrow(mk_arrow(mk_var("nat"), mk_var("d")), mk_var("d"))));
    EXPECT_FALSE(strict_pos(d, mk_app(mk_var("d"), mk_var("d"))));
}

TEST(BlockWf, AcceptsNat) {
    EXPECT_EQ(wf_kind("inductive N params 0 { nat : Type@{0} := zero : nat; succ : nat -> nat }."),
              std::nullopt);
}

TEST(BlockWf, RejectsEachViolation) {
    EXPECT_EQ(wf_kind("inductive B params 0 { d : Type@{0} := c : (d -> d) -> d }."),
              BlockErrorKind::strict_positivity);
    EXPECT_EQ(wf_kind("inductive B params 0 { d : Prop := c : d }."), BlockErrorKind::arity);
    EXPECT_EQ(wf_kind("inductive B params 0 { d : Type@{0} := d : d }."), BlockErrorKind::duplicate_name);
    EXPECT_EQ(wf_kind("inductive B params 0 { d : Type@{0}; e : Type@{1} := c : d; k : e }."),
              BlockErrorKind::mixed_sorts);
    EXPECT_EQ(wf_kind("inductive B params 1 { d : forall A : Type@{0}, Type@{0} := "
                      "c : forall A : Type@{1}, d A }."),
              BlockErrorKind::parameter_telescope);
    EXPECT_EQ(wf_kind("inductive B params 0 { d : Type@{0} := c : Type@{0} }."),
              BlockErrorKind::not_a_constructor);
    EXPECT_EQ(wf_kind("inductive B params 0 { d : Type@{0} := c : Type@{3} -> d }."),
              BlockErrorKind::ill_typed);
}

TEST(BlockWf, RejectsParameterNotPassedThrough) {
    Context nat = pcuic::testing::load_corpus("nat.pcuic");
    EXPECT_EQ(wf_kind("inductive L params 1 { list : forall A : Type@{0}, Type@{0} := "
                      "nil : forall A : Type@{0}, list nat }.",
                      nat),
              BlockErrorKind::parametricity);
}

TEST(BlockWf, AcceptsIndexedAndMutualCorpusBlocks) {
    for (const char* f : {"lists.pcuic", "ftree.pcuic", "sum.pcuic", "empty.pcuic"})
        EXPECT_NO_THROW(pcuic::testing::load_corpus(f)) << f;
}

TEST(ElimType, NatClauses) {
    Context ctx = pcuic::testing::load_corpus("nat.pcuic");
    const InductiveBlock& b = *ctx.find_block("N");
    std::vector<Term> q = {mk_var("Q")};
    Term zero = mk_ind_ref("N", "zero"), succ = mk_ind_ref("N", "succ"), nat = mk_ind_ref("N", "nat");
    EXPECT_EQ(elim_type("N", b, q, zero, b.constrs[0].type), mk_app(mk_var("Q"), zero));
    Term expected = mk_pi("p", nat, mk_arrow(mk_app(mk_var("Q"), mk_bvar(0)),
                                             mk_app(mk_var("Q"), mk_app(succ, mk_bvar(0)))));
    EXPECT_EQ(elim_type("N", b, q, succ, b.constrs[1].type), expected);
}

TEST(ElimType, ConsClause) {
    Context ctx = pcuic::testing::load_corpus("lists.pcuic");
    const InductiveBlock& b = *ctx.find_block("L0");
    std::vector<Term> q = {mk_var("Q")};
    Term cons = mk_ind_ref("L0", "cons");
    Term t = elim_type("L0", b, q, cons, b.constrs[1].type);
    Term expected = parse_term(
        "forall (A : Type@{0}) (x : A) (p : L0.list A), Q A p -> Q A (L0.cons A x p)",
        [&] {
            Context c = ctx;
            c.push_hyp("Q", mk_prop());
            return c;
        }());
    EXPECT_EQ(t, expected) << print(t, &ctx);
}

TEST(RecUnfold, Clauses) {
    Context ctx = pcuic::testing::load_corpus("lists.pcuic");
    const InductiveBlock& n = *ctx.find_block("N");
    std::vector<Term> q = {mk_var("Q")};
    std::vector<Term> f = {mk_var("fz"), mk_var("fs")};
    std::vector<Term> none;
    EXPECT_EQ(rec_unfold("N", n, q, f, mk_var("fz"), none, n.constrs[0].type), mk_var("fz"));
    std::vector<Term> k = {mk_var("k")};
    EXPECT_EQ(rec_unfold("N", n, q, f, mk_var("fs"), k, n.constrs[1].type),
              mk_apps(mk_var("fs"), std::vector<Term>{mk_var("k"), mk_elim(mk_var("k"), "N", "nat", q, f)}));

    const InductiveBlock& l = *ctx.find_block("L0");
    std::vector<Term> lf = {mk_var("fn"), mk_var("fc")};
    std::vector<Term> args = {mk_var("A"), mk_var("x"), mk_var("l")};
    Term expected = mk_apps(mk_var("fc"), std::vector<Term>{mk_var("A"), mk_var("x"), mk_var("l"),
                                                            mk_elim(mk_var("l"), "L0", "list", q, lf)});
    EXPECT_EQ(rec_unfold("L0", l, q, lf, mk_var("fc"), args, l.constrs[1].type), expected);
}

TEST(Telescope, RebuildRoundTrip) {
    Context ctx = pcuic::testing::load_corpus("sum.pcuic");
    for (const auto& e : ctx.entries()) {
        const auto* b = std::get_if<BlockEntry>(&e);
        if (!b) continue;
        for (const auto& s : b->block->constrs) {
            EXPECT_EQ(rebuild(split_telescope(s.type, b->block->param_count)), s.type);
            EXPECT_EQ(rebuild(split_telescope(s.type)), s.type);
        }
    }
}

// Every corpus block: case types are well formed and the recursor has the iota type.
TEST(CorpusBlocks, ElimTypesAndRecursorTypes) {
    for (const char* file : {"nat.pcuic", "lists.pcuic", "ftree.pcuic", "sum.pcuic"}) {
        Context base = pcuic::testing::load_corpus(file);
        for (const auto& entry : base.entries()) {
            const auto* be = std::get_if<BlockEntry>(&entry);
            if (!be) continue;
            const InductiveBlock& b = *be->block;
            Context ctx = base;
            std::vector<Term> motives, cases;
            for (const auto& d : b.inds) {
                std::string q = "Q_" + d.name;
                ctx.push_hyp(q, motive_type(be->name, b, d.name, mk_type(0)));
                motives.push_back(mk_var(q));
            }
            for (const auto& c : b.constrs) {
                Term et = elim_type(be->name, b, motives, mk_ind_ref(be->name, c.name), c.type);
                Env env(ctx);
                ASSERT_NO_THROW(infer_sort(env, et)) << file << " " << c.name;
                std::string f = "f_" + c.name;
                ctx.push_hyp(f, et);
                cases.push_back(mk_var(f));
            }
            for (std::size_t k = 0; k < b.constrs.size(); ++k) {
                const auto& c = b.constrs[k];
                Context local = ctx;
                Term ty = qualify(be->name, b, c.type);
                std::vector<Term> args;
                while (const auto* p = ty.get_if<Pi>()) {
                    std::string x = fresh_name("a");
                    local.push_hyp(x, p->domain);
                    args.push_back(mk_var(x));
                    ty = instantiate(p->codomain, mk_var(x));
                }
                auto [head, idx] = unfold_apps(ty);
                std::size_t d = *b.ind_index(head.as<IndRef>().member);
                idx.push_back(mk_apps(mk_ind_ref(be->name, c.name), args));
                Term expected = mk_apps(motives[d], idx);
                Term rec = rec_unfold(be->name, b, motives, cases, cases[k], args, c.type);
                Term got = infer(local, rec);
                EXPECT_TRUE(conv(local, got, expected))
                    << file << " " << c.name << ": " << print(got, &local) << " vs "
                    << print(expected, &local);
            }
        }
    }
}

TEST(InductiveProperty, StrictPosMatchesReference) {
    std::mt19937 rng(31);
    std::set<std::string> s = {"d"};
    int positives = 0;
    for (int i = 0; i < pcuic::testing::property_cases; ++i) {
        Term t = random_type(rng, 4);
        bool expected = ref_pos(t, s);
        positives += expected;
        ASSERT_EQ(strict_pos(s, t), expected) << print(t);
        ASSERT_EQ(strict_pos_arg(s, t), ref_arg(t, s)) << print(t);
    }
    EXPECT_GT(positives, 20);
}
