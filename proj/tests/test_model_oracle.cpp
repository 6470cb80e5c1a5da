#include <gtest/gtest.h>

#include <map>

#include "gen.hpp"
#include "pcuic/conversion.hpp"
#include "pcuic/model_oracle.hpp"
#include "pcuic/printer.hpp"
#include "pcuic/surface.hpp"

using namespace pcuic;
using namespace pcuic::testing;

namespace {

const Context& prelude() {
    static const Context ctx = load_source(gen_prelude());
    return ctx;
}

SetValue nat_v(int k) {
    SetValue v = SetValue::tag(0);
    for (int i = 0; i < k; ++i) v = SetValue::tag(1, {v});
    return v;
}

SetValue nats_below(int n) {
    std::vector<SetValue> out;
    for (int k = 0; k < n; ++k) out.push_back(nat_v(k));
    return SetValue::fin(std::move(out));
}

SetValue atoms(int n) {
    std::vector<SetValue> out;
    for (int k = 0; k < n; ++k) out.push_back(SetValue::tag(static_cast<std::uint32_t>(k)));
    return SetValue::fin(std::move(out));
}

/// Every list over `elems` with fewer than `bound` cells, built as constructor tags.
std::set<SetValue> lists_below(const SetValue& param, int bound) {
    std::set<SetValue> out;
    if (bound <= 0) return out;
    out.insert(SetValue::tag(0, {param}));
    for (const auto& tail : lists_below(param, bound - 1))
        for (const auto& x : param.items()) out.insert(SetValue::tag(1, {param, x, tail}));
    return out;
}

std::set<SetValue> payloads(const BlockInterp& interp) {
    std::set<SetValue> out;
    for (const auto& e : interp.elements()) out.insert(e.items()[3]);
    return out;
}

/// Saturation without any stage bookkeeping.
std::set<SetValue> reference_lfp(const RuleSet& rules) {
    std::set<SetValue> cur;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& r : rules) {
            bool fires = true;
            for (const auto& p : r.premises) fires = fires && cur.contains(p);
            if (fires && cur.insert(r.conclusion).second) changed = true;
        }
    }
    return cur;
}

SetValue random_small_set(std::mt19937& rng, int universe) {
    std::vector<SetValue> out;
    for (int k = 0; k < universe; ++k)
        if (pick(rng, 0, 1)) out.push_back(von_neumann(static_cast<std::uint32_t>(k)));
    return SetValue::fin(std::move(out));
}

}  // namespace

TEST(Encode, Examples) {
    SetValue zero = von_neumann(0), one = von_neumann(1);
    // The only function 1 -> 1 sends 0 to the empty set, so its trace is empty.
    EXPECT_EQ(encode({{zero, zero}}), SetValue::empty());
    EXPECT_EQ(encode({{zero, one}}), SetValue::fin(std::vector<SetValue>{SetValue::tup({zero, zero})}));
    SetValue f = encode({{zero, von_neumann(2)}, {one, one}});
    EXPECT_EQ(f.size(), 3u);
    EXPECT_EQ(decode(f, zero), von_neumann(2));
    EXPECT_EQ(decode(f, one), one);
    EXPECT_EQ(decode(f, von_neumann(2)), SetValue::empty());
    EXPECT_THROW(encode({{zero, one}, {zero, zero}}), std::invalid_argument);
}

TEST(Encode, DecodeStar) {
    SetValue zero = von_neumann(0), one = von_neumann(1);
    SetValue inner = encode({{zero, one}});
    SetValue outer = SetValue::fin(std::vector<SetValue>{SetValue::tup({one, SetValue::tup({zero, zero})})});
    EXPECT_EQ(decode_star(outer, {one, zero}), one);
    EXPECT_EQ(decode_star(inner, {}), inner);
}

TEST(PiSpace, CountsFunctions) {
    SetValue two = von_neumann(2);
    SetValue space = pi_space({von_neumann(0)}, [&](const SetValue&) { return two; });
    EXPECT_EQ(space.size(), 2u);
    EXPECT_TRUE(space.contains(SetValue::empty()));
    EXPECT_TRUE(space.contains(encode({{von_neumann(0), von_neumann(1)}})));
    SetValue props = prop_value();
    EXPECT_EQ(pi_space(props.items(), [&](const SetValue&) { return props; }).size(), 4u);
    EXPECT_EQ(pi_space({}, [&](const SetValue&) { return props; }).size(), 1u);
    EXPECT_EQ(pi_space(props.items(), [](const SetValue&) { return SetValue::empty(); }).size(), 0u);
    // Codomains of constructor values fall back to explicit graphs.
    SetValue graphs = pi_space(props.items(), [](const SetValue&) { return nats_below(3); });
    EXPECT_EQ(graphs.size(), 9u);
    EXPECT_EQ(graphs.items()[0].kind(), SetValue::Kind::graph);
}

TEST(Lfp, ChainOfRules) {
    SetValue a = SetValue::tag(0), b = SetValue::tag(1), c = SetValue::tag(2), d = SetValue::tag(3),
             e = SetValue::tag(4);
    RuleSet rules = {{{}, a}, {{a}, b}, {{a, b}, c}, {{d}, e}};
    Stages s = lfp_stages(rules, 10);
    ASSERT_EQ(s.stages.size(), 4u);
    EXPECT_TRUE(s.stages[0].empty());
    EXPECT_EQ(s.stages[1], std::set<SetValue>{a});
    EXPECT_EQ(s.stages[3], (std::set<SetValue>{a, b, c}));
    EXPECT_TRUE(s.closed);
    Stages cut = lfp_stages(rules, 2);
    EXPECT_EQ(cut.stages.size(), 3u);
    EXPECT_FALSE(cut.closed);
}

TEST(InterpBlock, Naturals) {
    Fragment f(prelude(), 4);
    BlockInterp nat = interp_block(f, "N", {}, 4);
    ASSERT_EQ(nat.stages.stages.size(), 5u);
    for (std::size_t a = 0; a < 5; ++a) EXPECT_EQ(nat.stages.stages[a].size(), a);
    EXPECT_FALSE(nat.stages.closed);
    EXPECT_EQ(inductive_members(nat, 0, {}, {}), nats_below(4));
    EXPECT_EQ(f.denote(nat_t()), nats_below(4));
}

TEST(InterpBlock, ListsOverAtoms) {
    Fragment f(prelude(), 3);
    SetValue param = atoms(2);
    BlockInterp l = interp_block(f, "L0", {param}, 3);
    std::vector<std::size_t> sizes;
    for (const auto& s : l.stages.stages) sizes.push_back(s.size());
    EXPECT_EQ(sizes, (std::vector<std::size_t>{0, 1, 3, 7}));
    EXPECT_EQ(payloads(l), lists_below(param, 3));
    // No list over an empty carrier besides nil, and the block closes.
    BlockInterp none = interp_block(f, "L0", {SetValue::empty()}, 3);
    EXPECT_TRUE(none.stages.closed);
    EXPECT_EQ(none.elements().size(), 1u);
}

TEST(InterpBlock, EmptyBlockCloses) {
    Context ctx = load_corpus("empty.pcuic");
    Fragment f(ctx, 5);
    BlockInterp e = interp_block(f, "E", {}, 5);
    EXPECT_TRUE(e.stages.closed);
    EXPECT_TRUE(e.elements().empty());
}

TEST(InterpBlock, IndicesAreUniquePerElement) {
    Context ctx = load_source(std::string(nat_block()) +
                              "inductive Ev params 0 { even : nat -> Type@{0} := ev0 : even zero; "
                              "evss : forall n : nat, even n -> even (succ (succ n)) }.\n");
    Fragment f(ctx, 6);
    BlockInterp ev = interp_block(f, "Ev", {}, 6);
    std::map<SetValue, std::set<SetValue>> index_of;
    for (const auto& e : ev.elements()) index_of[e.items()[3]].insert(e.items()[2]);
    EXPECT_EQ(index_of.size(), 4u);
    for (const auto& [elem, idx] : index_of) EXPECT_EQ(idx.size(), 1u) << render(elem);
    // Indices reach 6 through n = 4, the largest even natural below the depth.
    for (int k = 0; k < 9; ++k)
        EXPECT_EQ(inductive_members(ev, 0, {}, {nat_v(k)}).size(), k % 2 == 0 && k <= 6 ? 1u : 0u) << k;
}

TEST(InterpBlock, MutualTrees) {
    Context ctx = load_corpus("ftree.pcuic");
    Fragment f(ctx, 3);
    BlockInterp t = interp_block(f, "T", {}, 3);
    SetValue leaf = SetValue::tag(0), fnil = SetValue::tag(2);
    EXPECT_EQ(t.stages.stages[1].size(), 2u);
    EXPECT_TRUE(inductive_members(t, 0, {}, {}).contains(leaf));
    EXPECT_TRUE(inductive_members(t, 1, {}, {}).contains(fnil));
    EXPECT_TRUE(inductive_members(t, 0, {}, {}).contains(SetValue::tag(1, {fnil})));
    EXPECT_TRUE(inductive_members(t, 1, {}, {}).contains(SetValue::tag(3, {leaf, fnil})));
    Fragment deeper(ctx, 5);
    EXPECT_EQ(interp_block(deeper, "T", {}, 5).elements().size(), 17u + 97u);
    EXPECT_EQ(deeper.denote(parse_term("leaves (node (Fcons leaf (Fcons leaf Fnil)))", ctx)), nat_v(2));
}

TEST(InterpElim, Examples) {
    Context ctx = load_corpus("nat.pcuic");
    Fragment f(ctx, 8);
    EXPECT_EQ(f.denote(parse_term("add two three", ctx)), nat_v(5));
    EXPECT_EQ(render(f.denote(parse_term("add two three", ctx))), "5");
    Fragment shallow(ctx, 1);
    try {
        shallow.denote(parse_term("add two three", ctx));
        FAIL();
    } catch (const OracleError& e) {
        EXPECT_EQ(e.kind(), OracleError::Kind::depth_exhausted);
        EXPECT_EQ(e.label(), "depth-exhausted");
    }
    Context sum = load_corpus("sum.pcuic");
    Fragment fs(sum, 4);
    EXPECT_EQ(fs.denote(parse_term("sum_el (cons nat (succ zero) (cons nat (succ (succ zero)) (nil nat)))", sum)),
              nat_v(3));
}

namespace {

/// add's successor case as a curried graph: p |-> r |-> succ r.
SetValue add_step(int bound) {
    std::vector<SetValue::Pair> outer;
    for (int p = 0; p < bound; ++p) {
        std::vector<SetValue::Pair> inner;
        for (int r = 0; r < 2 * bound; ++r) inner.emplace_back(nat_v(r), nat_v(r + 1));
        outer.emplace_back(nat_v(p), SetValue::graph(inner));
    }
    return SetValue::graph(outer);
}

}  // namespace

TEST(InterpElim, DirectCases) {
    Fragment f(prelude(), 6);
    // The constant motive n |-> nat, restricted to the values that occur.
    std::vector<SetValue::Pair> motive;
    for (int n = 0; n < 6; ++n) motive.emplace_back(nat_v(n), nats_below(12));
    std::vector<std::optional<SetValue>> motives = {SetValue::graph(motive)};
    std::vector<SetValue> cases = {nat_v(3), add_step(6)};
    EXPECT_EQ(interp_elim(f, "N", motives, cases, nat_v(0), 6), nat_v(3));
    EXPECT_EQ(interp_elim(f, "N", motives, cases, nat_v(2), 6), nat_v(5));
    EXPECT_EQ(interp_elim(f, "N", {std::nullopt}, cases, nat_v(4), 6), nat_v(7));
    // An element built at stage k needs k + 1 rounds of the recursor rules.
    for (std::size_t depth = 0; depth <= 5; ++depth) {
        if (depth >= 3) {
            EXPECT_EQ(interp_elim(f, "N", motives, cases, nat_v(2), depth), nat_v(5));
            continue;
        }
        try {
            interp_elim(f, "N", motives, cases, nat_v(2), depth);
            ADD_FAILURE() << depth;
        } catch (const OracleError& e) {
            EXPECT_EQ(e.kind(), OracleError::Kind::depth_exhausted);
        }
    }
}

TEST(Denote, SortsAndErrors) {
    Fragment f(prelude(), 2);
    EXPECT_EQ(f.denote(mk_prop()), prop_value());
    try {
        f.denote(mk_type(0));
        FAIL();
    } catch (const OracleError& e) {
        EXPECT_EQ(e.kind(), OracleError::Kind::unsupported_fragment);
    }
    EXPECT_THROW(f.denote(mk_var("h")), OracleError);
    EXPECT_EQ(f.denote(mk_var("h"), {{"h", nat_v(1)}}), nat_v(1));
    EXPECT_EQ(render(SetValue::empty()), "{}");
}

TEST(OracleProperty, DecodeInvertsEncode) {
    std::mt19937 rng(71);
    for (int i = 0; i < property_cases; ++i) {
        std::vector<SetValue::Pair> graph;
        SetValue dom = random_small_set(rng, 5);
        for (const auto& x : dom.items()) graph.emplace_back(x, random_small_set(rng, 4));
        SetValue f = encode(graph);
        for (const auto& [x, y] : graph) ASSERT_EQ(decode(f, x), y);
    }
}

TEST(OracleProperty, EncodeInvertsDecodeOnRelations) {
    std::mt19937 rng(72);
    for (int i = 0; i < property_cases; ++i) {
        SetValue dom = random_small_set(rng, 4);
        std::vector<SetValue> pairs;
        for (const auto& x : dom.items()) {
            SetValue ys = random_small_set(rng, 4);
            for (const auto& y : ys.items()) pairs.push_back(SetValue::tup({x, y}));
        }
        SetValue rel = SetValue::fin(pairs);
        std::vector<SetValue::Pair> graph;
        for (const auto& x : dom.items()) graph.emplace_back(x, decode(rel, x));
        ASSERT_EQ(encode(graph), rel);
    }
}

TEST(OracleProperty, ImpredicativeProductsStayInOne) {
    std::mt19937 rng(77);
    const SetValue zero = von_neumann(0), one = von_neumann(1);
    int full = 0;
    for (int i = 0; i < property_cases; ++i) {
        SetValue dom = random_small_set(rng, 5);
        std::map<SetValue, SetValue> b;
        bool all_one = true;
        for (const auto& x : dom.items()) {
            SetValue bx = pick(rng, 0, 3) == 0 ? zero : one;
            all_one = all_one && bx == one;
            b.emplace(x, bx);
        }
        SetValue space = pi_space(dom.items(), [&](const SetValue& x) { return b.at(x); });
        for (const auto& g : space.items()) ASSERT_EQ(g, zero);
        ASSERT_EQ(space == one, all_one);
        full += all_one;
    }
    EXPECT_GT(full, 50);
}

TEST(OracleProperty, StagesAreMonotoneAndReachTheFixpoint) {
    std::mt19937 rng(73);
    for (int i = 0; i < property_cases; ++i) {
        RuleSet rules;
        int n = pick(rng, 0, 14);
        for (int r = 0; r < n; ++r) {
            std::vector<SetValue> prem;
            for (int p = pick(rng, 0, 2); p > 0; --p) prem.push_back(SetValue::tag(pick(rng, 0, 11)));
            std::sort(prem.begin(), prem.end());
            rules.insert(Rule{prem, SetValue::tag(pick(rng, 0, 11))});
        }
        Stages s = lfp_stages(rules, 20);
        ASSERT_TRUE(s.closed);
        ASSERT_EQ(s.last(), reference_lfp(rules));
        for (std::size_t a = 0; a + 1 < s.stages.size(); ++a) {
            std::set<SetValue> expect = s.stages[a];
            expect.merge(phi(rules, s.stages[a]));
            ASSERT_EQ(s.stages[a + 1], expect);
            ASSERT_TRUE(std::includes(s.stages[a + 1].begin(), s.stages[a + 1].end(), s.stages[a].begin(),
                                      s.stages[a].end()));
        }
        // Once a stage repeats, every later stage is the same set.
        std::set<SetValue> later = s.last();
        for (int k = 0; k < 3; ++k) {
            later.merge(phi(rules, later));
            ASSERT_EQ(later, s.last());
        }
    }
}

TEST(OracleProperty, ListLevelsShareTheirInterpretation) {
    std::mt19937 rng(74);
    Fragment f(prelude(), 4);
    for (int i = 0; i < property_cases; ++i) {
        SetValue param = atoms(pick(rng, 0, 3));
        std::size_t depth = static_cast<std::size_t>(pick(rng, 0, 4));
        std::string li = "L" + std::to_string(pick(rng, 0, 2)), lj = "L" + std::to_string(pick(rng, 0, 2));
        BlockInterp a = interp_block(f, li, {param}, depth), b = interp_block(f, lj, {param}, depth);
        ASSERT_EQ(a.elements(), b.elements());
        ASSERT_EQ(payloads(a), lists_below(param, static_cast<int>(depth)));
    }
}

TEST(OracleProperty, EliminatorsAgreeWithReduction) {
    NatGen g(75);
    Fragment f(prelude(), 30);
    int done = 0;
    while (done < property_cases) {
        NatTerm t = g.gen(4);
        if (t.value > 8) continue;
        ++done;
        SetValue v = f.denote(t.term);
        ASSERT_EQ(v, nat_v(t.value)) << print(t.term, &prelude());
        ASSERT_EQ(v, f.denote(normalize(prelude(), t.term)));
    }
}

TEST(OracleProperty, ListLengthAgreesWithReduction) {
    Context ctx = load_corpus("lists.pcuic");
    Fragment f(ctx, 4);
    std::mt19937 rng(76);
    for (int i = 0; i < property_cases; ++i) {
        int len = pick(rng, 0, 3);
        Term l = parse_term("nil nat", ctx);
        for (int k = 0; k < len; ++k)
            l = mk_apps(parse_term("cons", ctx), std::vector<Term>{nat_t(), numeral(pick(rng, 0, 3)), l});
        Term t = mk_apps(mk_var("length"), std::vector<Term>{nat_t(), l});
        SetValue v = f.denote(t);
        ASSERT_EQ(v, nat_v(len));
        ASSERT_EQ(v, f.denote(normalize(ctx, t)));
    }
}
