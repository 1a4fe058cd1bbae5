#include <doctest.h>

#include <algorithm>
#include <set>

#include "helpers.hpp"
#include "shapfold/dataset.hpp"

using namespace shapfold;
using testutil::write_temp;

TEST_CASE("load_csv reads the bundled cars table") {
    RawTable t = load_csv(testutil::data_file("cars.csv"), "acceptability", "acceptable");
    CHECK(t.rows.size() == 1728);
    CHECK(t.feature_count() == 6);
    CHECK(t.column_names.front() == "price");
    for (auto kind : t.column_kinds) CHECK(kind == ColumnKind::Categorical);
}

TEST_CASE("load_csv infers numeric columns") {
    const auto path = write_temp("num", "age,label\n1,yes\n2,no\n3,yes\n");
    RawTable t = load_csv(path, "label", "yes");
    CHECK(t.column_kinds[0] == ColumnKind::Numeric);
    CHECK(t.column_kinds[1] == ColumnKind::Categorical);
}

TEST_CASE("load_csv rejects ragged rows") {
    const auto path = write_temp("ragged", "a,b,label\n1,2,yes\n1,no\n");
    CHECK_THROWS_AS(load_csv(path, "label", "yes"), DataError);
}

TEST_CASE("load_csv rejects a third label value") {
    const auto path = write_temp("multi", "a,label\n1,yes\n2,no\n3,maybe\n");
    CHECK_THROWS_AS(load_csv(path, "label", "yes"), DataError);
}

TEST_CASE("load_csv records missing cells as their own category") {
    const auto path = write_temp("miss", "a,b,label\n?,x,yes\n,y,no\n");
    RawTable t = load_csv(path, "label", "yes");
    CHECK(t.rows[0][0] == kMissingValue);
    CHECK(t.rows[1][0] == kMissingValue);
    // a column of only missing cells is categorical, not numeric
    CHECK(t.column_kinds[0] == ColumnKind::Categorical);
}

TEST_CASE("discretize: equal-width bins over 0..4 with 5 bins") {
    const auto path = write_temp("eq", "v,label\n0,yes\n1,no\n2,yes\n3,no\n4,yes\n");
    RawTable t = discretize(load_csv(path, "label", "yes"), 5);
    CHECK(t.rows[0][0] == "[0,0.8)");
    CHECK(t.rows[1][0] == "[0.8,1.6)");
    CHECK(t.rows[4][0] == "[3.2,4]");  // last bin closed
    CHECK(t.column_kinds[0] == ColumnKind::Categorical);
}

TEST_CASE("discretize: constant column collapses to one closed bin") {
    const auto path = write_temp("const", "v,label\n7,yes\n7,no\n7,yes\n");
    RawTable t = discretize(load_csv(path, "label", "yes"), 4);
    for (const auto& row : t.rows) CHECK(row[0] == "[7,7]");
}

TEST_CASE("discretize: train-only statistics clamp out-of-range rows") {
    const auto path = write_temp("clamp", "v,label\n0,yes\n10,no\n-5,yes\n25,no\n");
    // statistics from the first two rows only: range [0,10]
    RawTable t = discretize(load_csv(path, "label", "yes"), 2, {0, 1});
    CHECK(t.rows[0][0] == "[0,5)");
    CHECK(t.rows[2][0] == "[0,5)");   // -5 clamps into the low bin
    CHECK(t.rows[3][0] == "[5,10]");  // 25 clamps into the high bin
}

TEST_CASE("binarize: per-value items, deterministic order, one-hot") {
    const auto path = write_temp(
        "bin", "chest_pain,thal,label\nc1,t3,yes\nc2,t6,no\nc3,t7,yes\nc4,t7,no\n");
    Dataset ds = binarize(load_csv(path, "label", "yes"));
    REQUIRE(ds.items.size() == 7);  // 4 chest_pain values + 3 thal values
    CHECK(ds.items[0].feature == "chest_pain");
    CHECK(ds.items[0].value == "c1");
    CHECK(ds.items[4].feature == "thal");
    CHECK(ds.items[4].value == "t3");
    // an example with thal=t7 sets exactly the thal=t7 item among thal items
    CHECK(ds.examples[2].bits[6] == 1);
    CHECK(ds.examples[2].bits[4] == 0);
    for (const auto& ex : ds.examples) {
        int chest = 0, thal = 0;
        for (std::size_t i = 0; i < ds.items.size(); ++i)
            if (ex.bits[i]) (ds.items[i].feature == "thal" ? thal : chest) += 1;
        CHECK(chest == 1);
        CHECK(thal == 1);
    }
}

TEST_CASE("binarize: single-value column yields one always-present item") {
    const auto path = write_temp("single", "k,label\nx,yes\nx,no\n");
    Dataset ds = binarize(load_csv(path, "label", "yes"));
    REQUIRE(ds.items.size() == 1);
    for (const auto& ex : ds.examples) CHECK(ex.bits[0] == 1);
}

TEST_CASE("binarize round-trips every cars row") {
    RawTable raw = load_csv(testutil::data_file("cars.csv"), "acceptability", "acceptable");
    Dataset ds = binarize(raw);
    const std::size_t label_idx = raw.label_index();
    for (std::size_t r = 0; r < raw.rows.size(); ++r) {
        // group items by feature, pick the present one, compare to the raw cell
        for (std::size_t c = 0; c < raw.column_names.size(); ++c) {
            if (c == label_idx) continue;
            std::string present;
            for (std::size_t i = 0; i < ds.items.size(); ++i)
                if (ds.items[i].feature == raw.column_names[c] && ds.examples[r].bits[i])
                    present = ds.items[i].value;
            REQUIRE(present == raw.rows[r][c]);
        }
        CHECK(ds.examples[r].label == (raw.rows[r][label_idx] == "acceptable" ? 1 : -1));
    }
}

namespace {

Dataset counted_dataset(int pos, int neg) {
    std::vector<std::vector<std::uint8_t>> patterns;
    std::vector<int> labels;
    for (int i = 0; i < pos + neg; ++i) {
        patterns.push_back({static_cast<std::uint8_t>(i % 2)});
        labels.push_back(i < pos ? 1 : -1);
    }
    return testutil::make_dataset(patterns, labels);
}

}  // namespace

TEST_CASE("split: stratified counts 60/40 at fraction 0.2") {
    auto [train, test] = split(counted_dataset(60, 40), 0.2, 1);
    int tp = 0, tn = 0;
    for (const auto& ex : test.examples) (ex.label > 0 ? tp : tn) += 1;
    CHECK(tp == 12);
    CHECK(tn == 8);
    CHECK(train.examples.size() + test.examples.size() == 100);
}

TEST_CASE("split: deterministic per seed, disjoint, union = input") {
    Dataset ds = counted_dataset(30, 20);
    // distinguishable rows: encode the original index in extra items
    for (std::size_t i = 0; i < ds.examples.size(); ++i) ds.examples[i].id = static_cast<int>(i);
    auto [tr1, te1] = split(ds, 0.3, 9);
    auto [tr2, te2] = split(ds, 0.3, 9);
    REQUIRE(te1.examples.size() == te2.examples.size());
    for (std::size_t i = 0; i < te1.examples.size(); ++i)
        CHECK(te1.examples[i].bits == te2.examples[i].bits);
    CHECK(tr1.examples.size() + te1.examples.size() == ds.examples.size());

    std::vector<int> labels(30, 1);
    for (std::size_t i = 0; i < labels.size(); i += 2) labels[i] = -1;
    auto test_ids_a = stratified_test_ids(labels, 0.3, 9);
    auto test_ids_b = stratified_test_ids(labels, 0.3, 10);
    CHECK(test_ids_a != test_ids_b);  // seed matters
}

TEST_CASE("split: fraction 0.5 on a 2/2 dataset gives 1 pos + 1 neg per side") {
    auto [train, test] = split(counted_dataset(2, 2), 0.5, 3);
    int ptr = 0, pte = 0;
    for (const auto& ex : train.examples) ptr += ex.label > 0;
    for (const auto& ex : test.examples) pte += ex.label > 0;
    CHECK(train.examples.size() == 2);
    CHECK(test.examples.size() == 2);
    CHECK(ptr == 1);
    CHECK(pte == 1);
}

TEST_CASE("stratified_test_ids drives both split and discretization statistics") {
    // same (labels, seed) must give the same partition no matter the caller
    std::vector<int> labels;
    for (int i = 0; i < 40; ++i) labels.push_back(i % 3 == 0 ? 1 : -1);
    auto a = stratified_test_ids(labels, 0.25, 77);
    auto b = stratified_test_ids(labels, 0.25, 77);
    CHECK(a == b);
    std::set<int> uniq(a.begin(), a.end());
    CHECK(uniq.size() == a.size());
    for (int id : a) CHECK(id < 40);
}

TEST_CASE("Dataset JSON round-trip") {
    Dataset ds = counted_dataset(3, 2);
    Dataset back = Dataset::from_json_string(ds.to_json_string());
    REQUIRE(back.items.size() == ds.items.size());
    REQUIRE(back.examples.size() == ds.examples.size());
    for (std::size_t i = 0; i < ds.examples.size(); ++i) {
        CHECK(back.examples[i].bits == ds.examples[i].bits);
        CHECK(back.examples[i].label == ds.examples[i].label);
    }
}
