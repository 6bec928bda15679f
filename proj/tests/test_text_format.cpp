#include "doctest.h"

#include "maltmaj/errors.hpp"
#include "maltmaj/search.hpp"
#include "maltmaj/text_format.hpp"

using namespace maltmaj;

namespace {

const char* kMinority =
    "domain 2\n"
    "op minority\n"
    "0 0 0 0\n"
    "0 0 1 1\n"
    "0 1 0 1\n"
    "0 1 1 0\n"
    "1 0 0 1\n"
    "1 0 1 0\n"
    "1 1 0 0\n"
    "1 1 1 1\n";

std::size_t parse_error_line(std::string_view text, bool language) {
    try {
        if (language)
            parse_language(text);
        else
            parse_operation(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

}  // namespace

TEST_CASE("operation format") {
    const auto named = parse_operation(kMinority);
    CHECK(named.name == "minority");
    CHECK(named.op == TernaryOperation::boolean_minority());
    CHECK(serialize_operation(named) == kMinority);

    SUBCASE("comments and blank lines are dropped on round trip") {
        const std::string commented = std::string("# xor\n\n") + kMinority + "\n# end\n";
        CHECK(serialize_operation(parse_operation(commented)) == kMinority);
    }
    SUBCASE("round trip for random tables") {
        Rng rng(1);
        for (int i = 0; i < 20; ++i) {
            const NamedOperation n{"p", sample_conservative(Domain(1 + i % 4), rng)};
            const std::string text = serialize_operation(n);
            const auto back = parse_operation(text);
            CHECK(back.op == n.op);
            CHECK(serialize_operation(back) == text);
        }
    }
    SUBCASE("errors carry positions") {
        std::string incomplete(kMinority);
        incomplete.resize(incomplete.rfind("1 1 1 1"));
        CHECK_THROWS_AS(parse_operation(incomplete), ParseError);

        std::string out_of_order(kMinority);
        out_of_order.replace(out_of_order.find("0 0 1 1"), 7, "0 1 0 1");
        CHECK(parse_error_line(out_of_order, false) == 4);

        std::string bad_value(kMinority);
        bad_value.replace(bad_value.find("0 1 1 0"), 7, "0 1 1 2");
        CHECK(parse_error_line(bad_value, false) == 6);

        CHECK(parse_error_line("domain x\n", false) == 1);
        CHECK(parse_error_line("domain 2\nop\n", false) == 2);
        CHECK(parse_error_line("", false) == 1);
        try {
            parse_operation("domain 2\nop p\n0 0 0 zero\n");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.line() == 3);
            CHECK(e.column() == 7);
        }
    }
}

TEST_CASE("language format") {
    const char* text =
        "# two-colouring\n"
        "domain 3\n"
        "conservative\n"
        "rel NEQ binary { (0,1) (1,0) }\n"
        "rel Small unary { 0 1 }\n"
        "rel Wide binary {\n"
        "  (0, 0) ( 2 ,1 )\n"
        "}\n"
        "rel None binary { }\n";
    const Language lang = parse_language(text);
    CHECK(lang.domain().size() == 3);
    CHECK(lang.conservative());
    REQUIRE(lang.relations().size() == 4);
    CHECK(lang.find("NEQ")->contains(1, 0));
    CHECK(lang.find("Small")->arity() == 1);
    CHECK(lang.find("Wide")->contains(2, 1));
    CHECK(lang.find("None")->is_empty());
    CHECK(parse_language(serialize_language(lang)).relations().size() == 4);
    CHECK(serialize_language(parse_language(serialize_language(lang))) == serialize_language(lang));

    SUBCASE("errors") {
        CHECK(parse_error_line("domain 2\nrel R binary { (0,1) (0,1) }\n", true) == 2);
        CHECK(parse_error_line("domain 2\nrel R unary { 0 0 }\n", true) == 2);
        CHECK(parse_error_line("domain 2\nrel R unary { 2 }\n", true) == 2);
        CHECK(parse_error_line("domain 2\nrel R ternary { }\n", true) == 2);
        CHECK(parse_error_line("domain 2\nrel R unary { 0 }\nrel R unary { 1 }\n", true) == 3);
        CHECK(parse_error_line("domain 2\nrel R binary { (0,1,1) }\n", true) == 2);
        CHECK(parse_error_line("domain 2\nrel R binary { (0,1)\n", true) == 3);
        CHECK(parse_error_line("conservative\n", true) == 1);
    }
}

TEST_CASE("instance format") {
    const Language lang = parse_language("domain 2\nrel NEQ binary { (0,1) (1,0) }\nrel One unary { 1 }\n");
    const Instance inst = parse_instance("vars 3\n# path\nconstraint NEQ 0 1\nconstraint NEQ 1 2\nconstraint One 2\n", lang);
    CHECK(inst.num_vars() == 3);
    REQUIRE(inst.constraints().size() == 3);
    CHECK(inst.constraints()[2].scope == std::vector<std::size_t>{2});
    CHECK(serialize_instance(inst) == "vars 3\nconstraint NEQ 0 1\nconstraint NEQ 1 2\nconstraint One 2\n");

    CHECK_THROWS_AS(parse_instance("vars 2\nconstraint EQ 0 1\n", lang), ParseError);
    CHECK_THROWS_AS(parse_instance("vars 2\nconstraint NEQ 0 2\n", lang), ParseError);
    CHECK_THROWS_AS(parse_instance("vars 2\nconstraint NEQ 0\n", lang), ParseError);
    CHECK_THROWS_AS(parse_instance("vars 2\nconstraint One 0 1\n", lang), ParseError);
    CHECK_THROWS_AS(parse_instance("constraint NEQ 0 1\n", lang), ParseError);
    CHECK(parse_instance("vars 0\n", lang).num_vars() == 0);
}
