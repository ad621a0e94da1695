#include "common/fixtures.hpp"
#include "irmia/iofmt.hpp"

#include <doctest.h>

#include <filesystem>

using namespace irmia;
using namespace irmia::testing;

TEST_CASE("golden files are canonical") {
    auto files = golden_files();
    CHECK(files.size() >= 20);
    for (const auto& f : files) {
        CAPTURE(f);
        std::string text = read_text(f);
        CHECK(serialize(parse(text)) == text);
    }
}

TEST_CASE("figure 1c encoding") {
    IrMia q = golden("fig1c_spec");
    CHECK(q.num_states() == 7);
    CHECK(q.edges().size() == 10);
    CHECK(q.state_name(q.failure()) == "_PHI");
}

TEST_CASE("parse reports positions") {
    try {
        parse("irmia A\ninputs a\noutputs b\nstates p*, F!\nsometimes p ?a p\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 5);
    }
}

TEST_CASE("parse then validate") {
    const char* clash =
        "irmia A\ninputs f\noutputs o\nstates q0*, q1, PHI!\n"
        "must q1 ?f PHI\nmay q1 ?f q0\n";
    CHECK_NOTHROW(parse_description(clash));
    CHECK_THROWS_AS(parse(clash), InvalidAutomaton);

    IrMia empty = parse("irmia E\ninputs a\noutputs b\nstates s*, F!\n");
    CHECK(empty.edges().empty());
    CHECK(empty.num_states() == 2);
}

TEST_CASE("names are quoted when needed") {
    CHECK(format_name("q0") == "q0");
    CHECK(format_name("(a,b)") == "\"(a,b)\"");
    IrMia a = parse("irmia \"odd name\"\ninputs \"1€\"\noutputs cup\nstates \"(p,q)\"*, F!\nmust \"(p,q)\" ?\"1€\" \"(p,q)\"\n");
    CHECK(a.name() == "odd name");
    CHECK(parse(serialize(a)).describe().edges.size() == 1);
    CHECK(serialize(parse(serialize(a))) == serialize(a));
}

TEST_CASE("dot output mentions every state") {
    IrMia q = golden("fig9a_P");
    std::string dot = to_dot(q);
    CHECK(dot.rfind("digraph", 0) == 0);
    for (StateId s = 0; s < q.num_states(); ++s) CHECK(dot.find(q.state_name(s)) != std::string::npos);
}

TEST_CASE("files round-trip through disk") {
    IrMia q = golden("fig11d_conjunction");
    auto path = std::filesystem::temp_directory_path() / "irmia_roundtrip.irmia";
    save_file(q, path.string());
    CHECK(serialize(load_file(path.string())) == serialize(q));
    std::filesystem::remove(path);
}
