#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "shapfold/theory.hpp"

using namespace shapfold;

namespace {

// flies(A) :- bird(A), not ab_bird(A).  /  ab_bird(A) :- penguin(A).
DefaultTheory birds() {
    return parse_theory_file(testutil::data_file("birds_theory.pl"));
}

// items: bird, penguin (both unary "true" tests)
Dataset bird_patterns() {
    Dataset ds = testutil::make_dataset({{1, 0}, {1, 1}, {0, 0}, {0, 1}}, {1, -1, -1, -1});
    ds.items[0].feature = "bird";
    ds.items[1].feature = "penguin";
    return ds;
}

std::vector<int> bind_birds(const DefaultTheory& t, const Dataset& ds) {
    return bind_items(t, ds.items);
}

}  // namespace

TEST_CASE("bundled birds theory parses with named abnormality predicate") {
    DefaultTheory t = birds();
    CHECK(t.target_name == "flies");
    REQUIRE(t.defaults.size() == 1);
    REQUIRE(t.abnormals.size() == 1);
    CHECK(t.ab_names[0] == "ab_bird");
    REQUIRE(t.defaults[0].body.size() == 2);
    CHECK(t.defaults[0].body[0].kind == Literal::Kind::ItemTest);
    CHECK(t.defaults[0].body[1].kind == Literal::Kind::NafAb);
    // unary literal bird(A) reads as the item test bird=true
    CHECK(t.items[t.defaults[0].body[0].index].feature == "bird");
    CHECK(t.items[t.defaults[0].body[0].index].value == "true");
}

TEST_CASE("negation-as-failure: birds fly, penguins do not") {
    DefaultTheory t = birds();
    Dataset ds = bird_patterns();
    auto binding = bind_birds(t, ds);
    const bool want[4] = {true, false, false, false};
    for (int i = 0; i < 4; ++i)
        CHECK(classify(t, ds.examples[i].bits, binding) == want[i]);
}

TEST_CASE("empty theory classifies everything negative") {
    DefaultTheory t;
    t.target_name = "t";
    Dataset ds = bird_patterns();
    for (const auto& ex : ds.examples) CHECK(!classify(t, ex.bits, {}));
}

TEST_CASE("single positive test clause") {
    DefaultTheory t = parse_theory("t(A) :- f0(A).\n");
    Dataset ds = testutil::make_dataset({{1}, {0}}, {1, -1});
    auto binding = bind_items(t, ds.items);
    CHECK(classify(t, ds.examples[0].bits, binding));
    CHECK(!classify(t, ds.examples[1].bits, binding));
}

TEST_CASE("render/parse round-trip preserves the birds theory") {
    DefaultTheory t = birds();
    DefaultTheory back = parse_theory(render_theory(t));
    CHECK(render_theory(back) == render_theory(t));
    Dataset ds = bird_patterns();
    auto b1 = bind_birds(t, ds);
    auto b2 = bind_birds(back, ds);
    for (const auto& ex : ds.examples)
        CHECK(classify(t, ex.bits, b1) == classify(back, ex.bits, b2));
}

TEST_CASE("values needing quotes survive the round-trip") {
    DefaultTheory t;
    t.target_name = "acceptable";
    t.items.push_back({"doors", "5more", Polarity::Present});
    t.items.push_back({"trunk", "big", Polarity::Present});
    Clause c;
    c.head = ClauseHead{true, -1};
    c.body = {Literal{Literal::Kind::ItemTest, 0}, Literal{Literal::Kind::ItemTest, 1}};
    t.defaults.push_back(c);
    const std::string text = render_theory(t);
    CHECK(text.find("'5more'") != std::string::npos);
    DefaultTheory back = parse_theory(text);
    CHECK(render_theory(back) == text);
}

TEST_CASE("parse reports dangling abnormality references") {
    CHECK_THROWS_AS(parse_theory("t(A) :- f0(A), not ab0(A).\n"), ParseError);
}

TEST_CASE("parse rejects cyclic abnormality definitions") {
    const std::string cyclic =
        "t(A) :- f0(A), not ab0(A).\n"
        "ab0(A) :- f1(A), not ab1(A).\n"
        "ab1(A) :- f2(A), not ab0(A).\n";
    CHECK_THROWS_AS(parse_theory(cyclic), ParseError);
    // the acyclic version is fine
    const std::string nested =
        "t(A) :- f0(A), not ab0(A).\n"
        "ab0(A) :- f1(A), not ab1(A).\n"
        "ab1(A) :- f2(A).\n";
    DefaultTheory t = parse_theory(nested);
    CHECK(t.abnormals.size() == 2);
}

TEST_CASE("parse errors carry a line number") {
    try {
        parse_theory("t(A) :- f0(A).\nt(A) :- ???\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("2") != std::string::npos);
    }
}

TEST_CASE("bind_items names the missing item") {
    DefaultTheory t = parse_theory("t(A) :- wingspan(A,wide).\n");
    Dataset ds = bird_patterns();
    try {
        bind_items(t, ds.items);
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("wingspan") != std::string::npos);
    }
}

TEST_CASE("nested exceptions evaluate recursively") {
    // t unless ab0; ab0 = f1 unless ab1; ab1 = f2
    DefaultTheory t = parse_theory(
        "t(A) :- f0(A), not ab0(A).\n"
        "ab0(A) :- f1(A), not ab1(A).\n"
        "ab1(A) :- f2(A).\n");
    Dataset ds = testutil::make_dataset(
        {{1, 0, 0}, {1, 1, 0}, {1, 1, 1}, {0, 1, 1}}, {1, -1, 1, -1});
    auto binding = bind_items(t, ds.items);
    CHECK(classify(t, ds.examples[0].bits, binding));   // no exception
    CHECK(!classify(t, ds.examples[1].bits, binding));  // ab0 fires
    CHECK(classify(t, ds.examples[2].bits, binding));   // ab1 cancels ab0
    CHECK(!classify(t, ds.examples[3].bits, binding));  // default body fails
}

namespace {

DefaultTheory random_theory(Rng& rng, int n_items) {
    DefaultTheory t;
    t.target_name = "t";
    for (int i = 0; i < n_items; ++i)
        t.items.push_back({"f" + std::to_string(i), "true", Polarity::Present});
    const int n_ab = static_cast<int>(rng.below(3));
    for (int a = 0; a < n_ab; ++a) t.allocate_ab();
    const int n_defaults = 1 + static_cast<int>(rng.below(3));
    for (int d = 0; d < n_defaults; ++d) {
        Clause c;
        c.head = ClauseHead{true, -1};
        const int n_body = 1 + static_cast<int>(rng.below(3));
        for (int l = 0; l < n_body; ++l)
            c.body.push_back({Literal::Kind::ItemTest,
                              static_cast<int>(rng.below(static_cast<std::uint64_t>(n_items)))});
        for (int a = 0; a < n_ab; ++a)
            if (rng.below(2)) c.body.push_back({Literal::Kind::NafAb, a});
        t.defaults.push_back(std::move(c));
    }
    for (int a = 0; a < n_ab; ++a) {
        Clause c;
        c.head = ClauseHead{false, a};
        c.body.push_back({Literal::Kind::ItemTest,
                          static_cast<int>(rng.below(static_cast<std::uint64_t>(n_items)))});
        t.abnormals[static_cast<std::size_t>(a)].push_back(std::move(c));
    }
    return t;
}

}  // namespace

TEST_CASE("adding an abnormality clause never enlarges a clause's cover") {
    Rng rng(606);
    for (int trial = 0; trial < 40; ++trial) {
        const int n_items = 4;
        DefaultTheory t = random_theory(rng, n_items);
        std::vector<std::vector<std::uint8_t>> pat;
        for (int i = 0; i < 16; ++i)
            pat.push_back({static_cast<std::uint8_t>(i & 1), static_cast<std::uint8_t>(i >> 1 & 1),
                           static_cast<std::uint8_t>(i >> 2 & 1),
                           static_cast<std::uint8_t>(i >> 3 & 1)});
        Dataset ds = testutil::make_dataset(pat, std::vector<int>(16, 1));
        auto binding = identity_binding(ds.items.size());
        std::vector<int> ids(16);
        for (int i = 0; i < 16; ++i) ids[i] = i;

        for (const Clause& c : t.defaults) {
            if (c.body.empty()) continue;
            auto before = covers(t, c, ids, ds, binding);
            // grow one referenced (or fresh) abnormality predicate
            DefaultTheory grown = t;
            Clause gc = c;
            int ab;
            if (!grown.abnormals.empty() && rng.below(2)) {
                ab = static_cast<int>(rng.below(grown.abnormals.size()));
            } else {
                ab = grown.allocate_ab();
                gc.body.push_back({Literal::Kind::NafAb, ab});
            }
            Clause extra;
            extra.head = ClauseHead{false, ab};
            extra.body.push_back({Literal::Kind::ItemTest,
                                  static_cast<int>(rng.below(n_items))});
            grown.abnormals[static_cast<std::size_t>(ab)].push_back(std::move(extra));
            auto after = covers(grown, gc, ids, ds, binding);
            CHECK(std::includes(before.begin(), before.end(), after.begin(), after.end()));
        }
    }
}
