#include "shapfold/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace shapfold {

using json = nlohmann::json;

std::size_t RawTable::label_index() const {
    for (std::size_t i = 0; i < column_names.size(); ++i)
        if (column_names[i] == label_column) return i;
    throw DataError("label column '" + label_column + "' not found");
}

namespace {

bool is_missing_cell(const std::string& cell) { return cell.empty() || cell == "?"; }

bool parse_number(const std::string& s, double& out) {
    const char* begin = s.data();
    const char* end = begin + s.size();
    while (begin != end && (*begin == ' ' || *begin == '\t')) ++begin;
    while (end != begin && (end[-1] == ' ' || end[-1] == '\t')) --end;
    if (begin == end) return false;
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

// RFC-4180-ish: quoted fields, embedded commas/quotes, CRLF line ends.
std::vector<std::vector<std::string>> read_csv_records(std::istream& is) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool any_field = false;
    char c;
    auto end_field = [&] {
        record.push_back(field);
        field.clear();
        any_field = true;
    };
    auto end_record = [&] {
        if (any_field || !field.empty() || !record.empty()) {
            end_field();
            records.push_back(record);
            record.clear();
            any_field = false;
        }
    };
    while (is.get(c)) {
        if (in_quotes) {
            if (c == '"') {
                if (is.peek() == '"') {
                    field.push_back('"');
                    is.get();
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\r') {
            // swallow; \n terminates
        } else if (c == '\n') {
            end_record();
        } else {
            field.push_back(c);
        }
    }
    if (in_quotes) throw DataError("unterminated quoted field in CSV");
    end_record();
    return records;
}

std::string format_edge(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

}  // namespace

RawTable load_csv(const std::string& path, const std::string& label_column,
                  const std::string& positive_label) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw DataError("cannot read '" + path + "'");
    auto records = read_csv_records(is);
    if (records.empty()) throw DataError("'" + path + "': empty file, header row required");

    RawTable table;
    table.column_names = records[0];
    table.label_column = label_column;
    table.positive_label = positive_label;
    const std::size_t width = table.column_names.size();

    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != width)
            throw DataError("'" + path + "': row " + std::to_string(r + 1) + " has " +
                            std::to_string(records[r].size()) + " cells, expected " +
                            std::to_string(width));
        auto& row = records[r];
        for (auto& cell : row)
            if (is_missing_cell(cell)) cell = kMissingValue;
        table.rows.push_back(std::move(row));
    }

    const std::size_t label_idx = table.label_index();

    std::set<std::string> label_values;
    for (const auto& row : table.rows) label_values.insert(row[label_idx]);
    if (label_values.size() > 2)
        throw DataError("label column '" + label_column + "' has " +
                        std::to_string(label_values.size()) + " distinct values, expected 2");
    if (!table.rows.empty() && !label_values.count(positive_label))
        throw DataError("positive label '" + positive_label + "' never occurs in '" +
                        label_column + "'");

    table.column_kinds.assign(width, ColumnKind::Categorical);
    for (std::size_t c = 0; c < width; ++c) {
        if (c == label_idx) continue;
        bool numeric = true;
        bool any_value = false;
        for (const auto& row : table.rows) {
            if (row[c] == kMissingValue) continue;
            any_value = true;
            double v;
            if (!parse_number(row[c], v)) {
                numeric = false;
                break;
            }
        }
        if (numeric && any_value) table.column_kinds[c] = ColumnKind::Numeric;
    }
    return table;
}

RawTable discretize(const RawTable& table, int n_bins, const std::vector<int>& stat_rows) {
    if (n_bins < 2) throw ConfigError("discretize: n_bins must be >= 2");
    RawTable out = table;
    const std::size_t label_idx = table.label_index();

    for (std::size_t c = 0; c < table.column_names.size(); ++c) {
        if (c == label_idx || table.column_kinds[c] != ColumnKind::Numeric) continue;

        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (int r : stat_rows) {
            const auto& cell = table.rows[static_cast<std::size_t>(r)][c];
            if (cell == kMissingValue) continue;
            double v;
            if (!parse_number(cell, v)) throw DataError("non-numeric cell in numeric column");
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        std::vector<std::string> labels;
        if (!(lo <= hi)) {
            // statistics rows were all missing; everything lands in one bin
            lo = hi = 0.0;
        }
        if (lo == hi) {
            labels.push_back("[" + format_edge(lo) + "," + format_edge(hi) + "]");
        } else {
            const double width = (hi - lo) / n_bins;
            for (int b = 0; b < n_bins; ++b) {
                const double a = lo + b * width;
                const double z = (b == n_bins - 1) ? hi : lo + (b + 1) * width;
                labels.push_back("[" + format_edge(a) + "," + format_edge(z) +
                                 (b == n_bins - 1 ? "]" : ")"));
            }
        }
        for (auto& row : out.rows) {
            auto& cell = row[c];
            if (cell == kMissingValue) continue;
            double v;
            parse_number(cell, v);
            int b = 0;
            if (lo != hi) {
                b = static_cast<int>(std::floor((v - lo) / ((hi - lo) / n_bins)));
                b = std::clamp(b, 0, n_bins - 1);  // clamps out-of-range test values too
            }
            cell = labels[static_cast<std::size_t>(b)];
        }
        out.column_kinds[c] = ColumnKind::Categorical;
    }
    return out;
}

RawTable discretize(const RawTable& table, int n_bins) {
    std::vector<int> all(table.rows.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    return discretize(table, n_bins, all);
}

Dataset binarize(const RawTable& table) {
    const std::size_t label_idx = table.label_index();
    for (std::size_t c = 0; c < table.column_names.size(); ++c)
        if (c != label_idx && table.column_kinds[c] != ColumnKind::Categorical)
            throw DataError("binarize: column '" + table.column_names[c] +
                            "' is numeric; discretize first");

    Dataset ds;
    std::vector<std::map<std::string, int>> value_index(table.column_names.size());
    for (std::size_t c = 0; c < table.column_names.size(); ++c) {
        if (c == label_idx) continue;
        std::set<std::string> values;
        for (const auto& row : table.rows) values.insert(row[c]);
        for (const auto& v : values) {
            value_index[c][v] = static_cast<int>(ds.items.size());
            ds.items.push_back(Item{table.column_names[c], v, Polarity::Present});
        }
    }

    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        Example ex;
        ex.bits.assign(ds.items.size(), 0);
        for (std::size_t c = 0; c < table.column_names.size(); ++c) {
            if (c == label_idx) continue;
            ex.bits[static_cast<std::size_t>(value_index[c].at(table.rows[r][c]))] = 1;
        }
        ex.label = table.rows[r][label_idx] == table.positive_label ? 1 : -1;
        ex.id = static_cast<int>(r);
        ds.examples.push_back(std::move(ex));
    }
    return ds;
}

std::vector<int> stratified_test_ids(const std::vector<int>& labels, double test_fraction,
                                     std::uint64_t seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        throw ConfigError("test_fraction must be in (0,1)");

    std::vector<int> pos, neg;
    for (std::size_t i = 0; i < labels.size(); ++i)
        (labels[i] > 0 ? pos : neg).push_back(static_cast<int>(i));
    if (pos.size() < 2 || neg.size() < 2)
        throw DataError("split: each class needs at least 2 examples");

    std::vector<int> test;
    Rng rng(seed);
    for (auto* cls : {&pos, &neg}) {
        auto& ids = *cls;
        for (std::size_t j = ids.size() - 1; j > 0; --j)
            std::swap(ids[j], ids[rng.below(j + 1)]);
        auto take = static_cast<std::size_t>(std::llround(test_fraction * ids.size()));
        take = std::clamp<std::size_t>(take, 1, ids.size() - 1);
        test.insert(test.end(), ids.begin(), ids.begin() + static_cast<long>(take));
    }
    std::sort(test.begin(), test.end());
    return test;
}

std::pair<Dataset, Dataset> split(const Dataset& dataset, double test_fraction,
                                  std::uint64_t seed) {
    std::vector<int> labels(dataset.examples.size());
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = dataset.examples[i].label;
    auto test_ids = stratified_test_ids(labels, test_fraction, seed);

    std::vector<std::uint8_t> is_test(dataset.examples.size(), 0);
    for (int id : test_ids) is_test[static_cast<std::size_t>(id)] = 1;

    Dataset train, test;
    train.items = dataset.items;
    test.items = dataset.items;
    for (std::size_t i = 0; i < dataset.examples.size(); ++i) {
        Dataset& side = is_test[i] ? test : train;
        Example ex = dataset.examples[i];
        ex.id = static_cast<int>(side.examples.size());
        side.examples.push_back(std::move(ex));
    }
    return {std::move(train), std::move(test)};
}

std::string Dataset::to_json_string() const {
    json j;
    j["items"] = json::array();
    for (const auto& it : items)
        j["items"].push_back({{"feature", it.feature},
                              {"value", it.value},
                              {"polarity", it.polarity == Polarity::Present ? "present" : "absent"}});
    j["examples"] = json::array();
    for (const auto& ex : examples) {
        json e;
        e["id"] = ex.id;
        e["label"] = ex.label;
        e["bits"] = json::array();
        for (auto b : ex.bits) e["bits"].push_back(static_cast<int>(b));
        j["examples"].push_back(std::move(e));
    }
    return j.dump(2);
}

Dataset Dataset::from_json_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("dataset JSON: ") + e.what());
    }
    Dataset ds;
    for (const auto& it : j.at("items"))
        ds.items.push_back(Item{it.at("feature"), it.at("value"),
                                it.at("polarity") == "absent" ? Polarity::Absent
                                                              : Polarity::Present});
    for (const auto& e : j.at("examples")) {
        Example ex;
        ex.id = e.at("id");
        ex.label = e.at("label");
        for (const auto& b : e.at("bits")) ex.bits.push_back(b.get<int>() ? 1 : 0);
        if (ex.bits.size() != ds.items.size())
            throw ParseError("dataset JSON: bit-vector length mismatch");
        ds.examples.push_back(std::move(ex));
    }
    return ds;
}

}  // namespace shapfold
