#include "common/fixtures.hpp"
#include "irmia/conjunction.hpp"
#include "irmia/refinement.hpp"

#include <doctest.h>

using namespace irmia;
using namespace irmia::testing;

namespace {

// small deterministic automaton used on both sides
IrMia vending() {
    return parse(
        "irmia V\ninputs coin, refund\noutputs tea\nstates idle*, paid, F!\n"
        "must idle ?coin paid\nmust idle ?refund F\nmay paid !tea idle\nmust paid ?refund idle\n");
}

}  // namespace

TEST_CASE("alphabets must agree") {
    CHECK_THROWS_AS(conjunctive_product(golden("fig11a_Q"), golden("fig9a_P")), std::invalid_argument);
}

TEST_CASE("beverage machine conjunction") {
    IrMia q = golden("fig11a_Q"), r = golden("fig11b_R");
    auto prod = conjunctive_product(q, r);
    auto f = inconsistent_states(prod, q, r);
    REQUIRE(f.entries.size() == 1);
    CHECK(f.entries[0].state == "(s',v'')");
    CHECK(f.entries[0].rule == "F2");
    CHECK(f.entries[0].action == "water");
    auto k = conjoin(q, r);
    REQUIRE(k.defined);
    CHECK_FALSE(k.automaton->find_state("(s',v'')"));
    CHECK(refines(*k.automaton, q).holds);
    CHECK(refines(*k.automaton, r).holds);
    // mandatory 1€ and refused 1£ survive at the initial pair
    IrMia a = *k.automaton;
    auto euro = a.find_action("1€"), pound = a.find_action("1£");
    REQUIRE(euro);
    REQUIRE(pound);
    CHECK(a.enables(a.initial(), *euro, Gamma::Must));
    CHECK(a.step(a.initial(), *pound, Gamma::Must) == StateSet{a.failure()});
}

TEST_CASE("demonic state example") {
    auto k = conjoin(golden("demonic_P"), golden("demonic_Q"));
    REQUIRE(k.defined);
    std::string diff = structural_diff(*k.automaton, golden("demonic_conjunction"));
    CHECK_MESSAGE(diff.empty(), diff);
}

TEST_CASE("self conjunction of a deterministic automaton") {
    IrMia v = vending();
    auto prod = conjunctive_product(v, v);
    CHECK(inconsistent_states(prod, v, v).states.empty());
    CHECK(prod.automaton.num_states() == v.num_states());
    auto k = conjoin(v, v);
    REQUIRE(k.defined);
    CHECK(refines(*k.automaton, v).holds);
    CHECK(refines(v, *k.automaton).holds);
}

TEST_CASE("contradictory mandatory output is undefined") {
    IrMia a = parse("irmia A\ninputs i\noutputs o\nstates s*, F!\nmust s !o s\n");
    IrMia b = parse("irmia B\ninputs i\noutputs o\nstates s*, F!\nmust s ?i s\n");
    auto k = conjoin(a, b);
    CHECK_FALSE(k.defined);
    REQUIRE_FALSE(k.inconsistent.empty());
    CHECK(k.inconsistent[0].rule == "F1");
}

TEST_CASE("required input against a refusal") {
    IrMia a = parse("irmia A\ninputs i\noutputs o\nstates s*, t, F!\nmust s ?i t\n");
    IrMia b = parse("irmia B\ninputs i\noutputs o\nstates s*, F!\nmust s ?i F\n");
    auto k = conjoin(a, b);
    CHECK_FALSE(k.defined);
    REQUIRE_FALSE(k.inconsistent.empty());
    CHECK(k.inconsistent[0].rule == "F3");
}

TEST_CASE("optional input into an inconsistent pair becomes a refusal") {
    IrMia a = parse("irmia A\ninputs i\noutputs o\nstates s*, t, F!\nmay s ?i t\nmust t !o t\n");
    IrMia b = parse("irmia B\ninputs i\noutputs o\nstates s*, t, F!\nmay s ?i t\nmust t ?i t\n");
    auto k = conjoin(a, b);
    REQUIRE(k.defined);
    IrMia c = *k.automaton;
    CHECK(c.step(c.initial(), *c.find_action("i"), Gamma::Must) == StateSet{c.failure()});
}
