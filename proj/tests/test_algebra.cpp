#include "doctest.h"

#include "maltmaj/algebra.hpp"
#include "maltmaj/errors.hpp"
#include "maltmaj/search.hpp"
#include "oracle.hpp"

using namespace maltmaj;

namespace {

TernaryOperation from_oracle_table(const std::vector<unsigned>& t, std::size_t n) {
    return TernaryOperation(Domain(n), std::vector<Element>(t.begin(), t.end()));
}

}  // namespace

TEST_CASE("domain and table invariants") {
    CHECK_THROWS_AS(Domain(0), UsageError);
    CHECK_THROWS_AS(Domain(Domain::kMaxSize + 1), UsageError);
    CHECK_THROWS_AS(TernaryOperation(Domain(2), {0, 1, 0}), UsageError);
    CHECK_THROWS_AS(TernaryOperation(Domain(2), {0, 1, 0, 0, 1, 0, 0, 2}), UsageError);
}

TEST_CASE("apply") {
    const auto minority = TernaryOperation::boolean_minority();
    CHECK(apply(minority, 0, 1, 1) == 0);
    CHECK(apply(TernaryOperation::first_projection(Domain(3)), 2, 0, 1) == 2);
    CHECK_THROWS_AS(apply(minority, 0, 2, 1), UsageError);

    SUBCASE("maltsev ops are idempotent") {
        for_each_maltsev_conservative(Domain(3), [](const TernaryOperation& op) {
            for (Element x = 0; x < 3; ++x)
                REQUIRE(apply(op, x, x, x) == x);
        });
    }
}

TEST_CASE("is_conservative") {
    CHECK(is_conservative(TernaryOperation::first_projection(Domain(4))));
    std::size_t conservative_count = 0;
    for (const auto& t : oracle::all_tables(2)) {
        const bool expected = oracle::conservative(oracle::as_fn(t, 2), 2);
        CHECK(is_conservative(from_oracle_table(t, 2)) == expected);
        conservative_count += expected;
    }
    // Only the two constant-on-diagonal cells are forced.
    CHECK(conservative_count == 64);

    std::vector<Element> table(27);
    auto op = TernaryOperation::first_projection(Domain(3));
    table.assign(op.table().begin(), op.table().end());
    table[op.index(0, 0, 1)] = 2;
    CHECK_FALSE(is_conservative(TernaryOperation(Domain(3), table)));
}

TEST_CASE("is_maltsev against the definition on every n=2 table") {
    CHECK(is_maltsev(TernaryOperation::boolean_minority()));
    CHECK_FALSE(is_maltsev(TernaryOperation::first_projection(Domain(2))));
    CHECK_FALSE(is_maltsev(TernaryOperation::first_projection(Domain(3))));

    std::size_t maltsev_count = 0;
    for (const auto& t : oracle::all_tables(2)) {
        const bool expected = oracle::maltsev(oracle::as_fn(t, 2), 2);
        CHECK(is_maltsev(from_oracle_table(t, 2)) == expected);
        maltsev_count += expected;
    }
    CHECK(maltsev_count == 4);
}

TEST_CASE("is_majority") {
    CHECK(is_majority(TernaryOperation::boolean_majority()));
    CHECK_FALSE(is_majority(TernaryOperation::boolean_minority()));
    for (const auto& t : oracle::all_tables(2))
        CHECK(is_majority(from_oracle_table(t, 2)) == oracle::majority(oracle::as_fn(t, 2), 2));
}

TEST_CASE("maltsev and majority exclude each other for n >= 2") {
    for (const auto& t : oracle::all_tables(2)) {
        const auto op = from_oracle_table(t, 2);
        CHECK_FALSE((is_maltsev(op) && is_majority(op)));
    }
    // n = 1 has a single operation, which is both.
    const TernaryOperation trivial(Domain(1), {0});
    CHECK(is_maltsev(trivial));
    CHECK(is_majority(trivial));
}

TEST_CASE("derivative") {
    SUBCASE("minority on n=2 becomes boolean majority, all 8 triples") {
        const auto d = derivative(TernaryOperation::boolean_minority());
        for (Element x = 0; x < 2; ++x)
            for (Element y = 0; y < 2; ++y)
                for (Element z = 0; z < 2; ++z)
                    CHECK(d(x, y, z) == (x + y + z >= 2 ? 1U : 0U));
        CHECK(d == TernaryOperation::boolean_majority());
        CHECK(d(0, 1, 1) == 1);
    }
    SUBCASE("first projection becomes third projection") {
        CHECK(derivative(TernaryOperation::first_projection(Domain(3))) ==
              TernaryOperation::third_projection(Domain(3)));
    }
    SUBCASE("matches the oracle and is always conservative, n=2 all tables") {
        for (const auto& t : oracle::all_tables(2)) {
            const auto op = from_oracle_table(t, 2);
            const auto d = derivative(op);
            const auto expected = oracle::derivative(oracle::as_fn(t, 2));
            for (Element x = 0; x < 2; ++x)
                for (Element y = 0; y < 2; ++y)
                    for (Element z = 0; z < 2; ++z)
                        REQUIRE(d(x, y, z) == expected(x, y, z));
            CHECK(is_conservative(d));
        }
    }
    SUBCASE("derivative of any maltsev op is majority, including non-conservative ones") {
        Rng rng(7);
        for (int i = 0; i < 200; ++i) {
            // Random table with the Maltsev cells overwritten.
            const Domain d(4);
            std::vector<Element> table(64);
            for (auto& v : table)
                v = static_cast<Element>(uniform_below(rng, 4));
            TernaryOperation base(d, table);
            for (Element x = 0; x < 4; ++x)
                for (Element y = 0; y < 4; ++y) {
                    table[base.index(x, x, y)] = y;
                    table[base.index(y, x, x)] = y;
                }
            const TernaryOperation op(d, table);
            REQUIRE(is_maltsev(op));
            CHECK(is_majority(derivative(op)));
            for (Element x = 0; x < 4; ++x)
                for (Element y = 0; y < 4; ++y)
                    CHECK(derivative(op)(x, x, y) == x);
        }
    }
    SUBCASE("derivative of a random op is conservative") {
        Rng rng(11);
        for (int i = 0; i < 100; ++i) {
            std::vector<Element> table(125);
            for (auto& v : table)
                v = static_cast<Element>(uniform_below(rng, 5));
            CHECK(is_conservative(derivative(TernaryOperation(Domain(5), table))));
        }
    }
}

TEST_CASE("classify_case") {
    const auto minority = TernaryOperation::boolean_minority();

    SUBCASE("equal arguments resolve to x by priority") {
        const ElementPair ab{0, 1};
        CHECK(to_string(classify_case(ab, ab, ab, minority)) == "x1x2");
    }
    SUBCASE("labels agree with recomputation for every input, n <= 3") {
        for (std::size_t n = 2; n <= 3; ++n) {
            const Domain d(n);
            Rng rng(n);
            for (int s = 0; s < 20; ++s) {
                const auto op = sample_maltsev_conservative(d, rng);
                for (Element x1 = 0; x1 < n; ++x1)
                    for (Element x2 = 0; x2 < n; ++x2)
                        for (Element y1 = 0; y1 < n; ++y1)
                            for (Element y2 = 0; y2 < n; ++y2)
                                for (Element z1 = 0; z1 < n; ++z1)
                                    for (Element z2 = 0; z2 < n; ++z2) {
                                        const auto label = classify_case({x1, x2}, {y1, y2}, {z1, z2}, op);
                                        const Element t1 = op(x1, y1, z1);
                                        const Element t2 = op(x2, y2, z2);
                                        const Element want1 = select(label.first, x1, y1, z1);
                                        const Element want2 = select(label.second, x2, y2, z2);
                                        REQUIRE(t1 == want1);
                                        REQUIRE(t2 == want2);
                                        // Priority: x wins over y, y over z.
                                        if (label.first != ArgPosition::x)
                                            REQUIRE(t1 != x1);
                                        if (label.first == ArgPosition::z)
                                            REQUIRE(t1 != y1);
                                        // The derivative's output is read off the label.
                                        const auto dl = derivative_case(label);
                                        const auto der = derivative(op);
                                        REQUIRE(der(x1, y1, z1) == select(dl.first, x1, y1, z1));
                                        REQUIRE(der(x2, y2, z2) == select(dl.second, x2, y2, z2));
                                    }
            }
        }
    }
    SUBCASE("non-conservative op is a precondition error") {
        std::vector<Element> table(27, 2);
        CHECK_THROWS_AS(classify_case({0, 0}, {0, 0}, {1, 1}, TernaryOperation(Domain(3), table)), UsageError);
    }
}

TEST_CASE("derivative_case reproduces the nine-row table") {
    const std::pair<const char*, const char*> rows[] = {
        {"x1x2", "z1z2"}, {"x1y2", "z1x2"}, {"x1z2", "z1x2"}, {"y1x2", "x1z2"}, {"y1y2", "x1x2"},
        {"y1z2", "x1x2"}, {"z1x2", "x1z2"}, {"z1y2", "x1x2"}, {"z1z2", "x1x2"},
    };
    const ArgPosition all[] = {ArgPosition::x, ArgPosition::y, ArgPosition::z};
    std::size_t seen = 0;
    for (auto a : all)
        for (auto b : all) {
            const CaseLabel label{a, b};
            for (const auto& [p, q] : rows)
                if (to_string(label) == p) {
                    CHECK(to_string(derivative_case(label)) == q);
                    ++seen;
                }
        }
    CHECK(seen == 9);
}
