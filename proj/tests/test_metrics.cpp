#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "shapfold/metrics.hpp"

using namespace shapfold;

namespace {

// 60/40 positive/negative split over a single feature that does not matter
Dataset sixty_forty() {
    std::vector<std::vector<std::uint8_t>> bits;
    std::vector<int> labels;
    for (int i = 0; i < 10; ++i) {
        bits.push_back({1});
        labels.push_back(i < 6 ? 1 : -1);
    }
    return testutil::make_dataset(bits, labels);
}

}  // namespace

TEST_CASE("an everything-positive theory on a 60/40 split") {
    DefaultTheory t = parse_theory("t(A) :- f0(A).\n");
    Dataset ds = sixty_forty();
    Metrics m = evaluate(t, ds, bind_items(t, ds.items));
    CHECK(m.precision == doctest::Approx(0.6));
    CHECK(m.recall == doctest::Approx(1.0));
    CHECK(m.accuracy == doctest::Approx(0.6));
    CHECK(m.f1 == doctest::Approx(0.75));
    CHECK(m.tp == 6);
    CHECK(m.fp == 4);
    CHECK(m.tn == 0);
    CHECK(m.fn == 0);
    CHECK(m.clause_count == 1);
}

TEST_CASE("a perfect theory scores 1.0 across the board") {
    DefaultTheory t = parse_theory("t(A) :- f0(A).\n");
    Dataset ds = testutil::make_dataset({{1}, {1}, {0}, {0}}, {1, 1, -1, -1});
    Metrics m = evaluate(t, ds, bind_items(t, ds.items));
    CHECK(m.precision == 1.0);
    CHECK(m.recall == 1.0);
    CHECK(m.accuracy == 1.0);
    CHECK(m.f1 == 1.0);
}

TEST_CASE("metric identities hold over random confusion counts") {
    Rng rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        const long tp = static_cast<long>(rng.below(20));
        const long fp = static_cast<long>(rng.below(20));
        const long tn = static_cast<long>(rng.below(20));
        const long fn = static_cast<long>(rng.below(20));
        if (tp + fp + tn + fn == 0) continue;
        Metrics m = compute_metrics(tp, fp, tn, fn);
        CHECK(m.accuracy ==
              doctest::Approx(static_cast<double>(tp + tn) / static_cast<double>(tp + fp + tn + fn)));
        if (m.precision_defined)
            CHECK(m.precision ==
                  doctest::Approx(static_cast<double>(tp) / static_cast<double>(tp + fp)));
        if (m.recall_defined)
            CHECK(m.recall == doctest::Approx(static_cast<double>(tp) / static_cast<double>(tp + fn)));
        if (m.f1_defined) {
            CHECK(m.f1 == doctest::Approx(2.0 * m.precision * m.recall /
                                          (m.precision + m.recall)));
            // harmonic mean lies between min and max of its arguments
            CHECK(m.f1 <= std::max(m.precision, m.recall) + 1e-12);
            CHECK(m.f1 >= std::min(m.precision, m.recall) - 1e-12);
        }
        CHECK(m.precision >= 0.0);
        CHECK(m.precision <= 1.0);
        CHECK(m.recall >= 0.0);
        CHECK(m.recall <= 1.0);
    }
}

TEST_CASE("zero denominators clear the defined flags and report undefined") {
    Metrics m = compute_metrics(0, 0, 5, 0);  // nothing predicted or labeled positive
    CHECK(!m.precision_defined);
    CHECK(!m.recall_defined);
    CHECK(!m.f1_defined);
    CHECK(m.precision == 0.0);
    CHECK(m.recall == 0.0);
    CHECK(m.f1 == 0.0);
    CHECK(m.accuracy == 1.0);
    const std::string json = m.to_json_string();
    CHECK(json.find("\"undefined\"") != std::string::npos);
    CHECK(json.find("\"precision\"") != std::string::npos);
    CHECK(m.to_table().find("undefined") != std::string::npos);

    Metrics r = compute_metrics(0, 3, 2, 0);  // positives predicted, none labeled
    CHECK(r.precision_defined);
    CHECK(!r.recall_defined);
    CHECK(!r.f1_defined);

    Metrics z = compute_metrics(0, 2, 2, 2);  // both defined but both zero
    CHECK(z.precision_defined);
    CHECK(z.recall_defined);
    CHECK(!z.f1_defined);
}

TEST_CASE("JSON output carries every expected key") {
    Metrics m = compute_metrics(3, 1, 4, 2);
    m.clause_count = 5;
    m.time_s = 1.25;
    const std::string json = m.to_json_string();
    for (const char* key : {"precision", "recall", "accuracy", "f1", "clause_count",
                            "time_s", "tp", "fp", "tn", "fn"})
        CHECK(json.find("\"" + std::string(key) + "\"") != std::string::npos);
    CHECK(json.find("\"undefined\"") == std::string::npos);
}

TEST_CASE("rendered theories evaluate identically after re-parsing") {
    DefaultTheory t = parse_theory(
        "t(A) :- f0(A), not ab0(A).\n"
        "t(A) :- f2(A).\n"
        "ab0(A) :- f1(A).\n");
    Rng rng(303);
    std::vector<std::vector<std::uint8_t>> bits;
    std::vector<int> labels;
    for (int i = 0; i < 30; ++i) {
        bits.push_back({static_cast<std::uint8_t>(rng.below(2)),
                        static_cast<std::uint8_t>(rng.below(2)),
                        static_cast<std::uint8_t>(rng.below(2))});
        labels.push_back(rng.below(2) ? 1 : -1);
    }
    Dataset ds = testutil::make_dataset(bits, labels);
    DefaultTheory back = parse_theory(render_theory(t));
    Metrics a = evaluate(t, ds, bind_items(t, ds.items));
    Metrics b = evaluate(back, ds, bind_items(back, ds.items));
    CHECK(a.tp == b.tp);
    CHECK(a.fp == b.fp);
    CHECK(a.tn == b.tn);
    CHECK(a.fn == b.fn);
    CHECK(a.clause_count == b.clause_count);
}

TEST_CASE("evaluate rejects an empty test set") {
    DefaultTheory t = parse_theory("t(A) :- f0(A).\n");
    Dataset empty;
    CHECK_THROWS_AS(evaluate(t, empty, {}), DataError);
}
