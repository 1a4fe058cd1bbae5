#include "shapfold/transact.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace shapfold {

long long Transaction::total_utility() const {
    long long t = 0;
    for (const auto& e : entries) t += e.utility;
    return t;
}

TransactionDB build_transactions(const std::vector<int>& example_ids, const Dataset& dataset,
                                 const ShapMatrix& shap, Orientation orientation) {
    const double sign = orientation == Orientation::TowardPositive ? 1.0 : -1.0;

    // First pass: oriented attributions of present items, tracking the max.
    double max_kept = 0.0;
    std::vector<std::vector<std::pair<int, double>>> kept(example_ids.size());
    for (std::size_t t = 0; t < example_ids.size(); ++t) {
        const int id = example_ids[t];
        if (id < 0 || static_cast<std::size_t>(id) >= shap.attributions.size())
            throw DataError("build_transactions: example id " + std::to_string(id) +
                            " outside attribution matrix");
        const auto& ex = dataset.examples[static_cast<std::size_t>(id)];
        const auto& phi = shap.attributions[static_cast<std::size_t>(id)];
        for (std::size_t i = 0; i < ex.bits.size(); ++i) {
            if (!ex.bits[i]) continue;
            const double v = sign * phi[i];
            if (v > 0.0) {
                kept[t].emplace_back(static_cast<int>(i), v);
                max_kept = std::max(max_kept, v);
            }
        }
    }
    if (max_kept <= 0.0)
        throw DegenerateAttributionError(
            "no example in the subset has a positively oriented attribution");

    TransactionDB db;
    db.item_count = static_cast<int>(dataset.item_count());
    db.utility_scale = kUtilityScale;
    for (std::size_t t = 0; t < example_ids.size(); ++t) {
        Transaction tr;
        tr.example_id = example_ids[t];
        for (const auto& [item, v] : kept[t]) {
            const auto u = static_cast<long long>(std::llround(v / max_kept * kUtilityScale));
            if (u > 0) tr.entries.push_back({item, u});
        }
        db.transactions.push_back(std::move(tr));
    }
    return db;
}

void TransactionDB::dump(std::ostream& os) const {
    auto name = [&](int item) {
        if (!item_names.empty()) return item_names[static_cast<std::size_t>(item)];
        return std::to_string(item);
    };
    for (const auto& tr : transactions) {
        for (std::size_t i = 0; i < tr.entries.size(); ++i) {
            if (i) os << ' ';
            os << name(tr.entries[i].item);
        }
        os << ':' << tr.total_utility() << ':';
        for (std::size_t i = 0; i < tr.entries.size(); ++i) {
            if (i) os << ' ';
            os << tr.entries[i].utility;
        }
        os << '\n';
    }
}

TransactionDB parse_db(std::istream& is) {
    struct RawTrans {
        std::vector<std::string> tokens;
        std::vector<long long> utils;
    };
    std::vector<RawTrans> raw;
    std::map<std::string, int> index;

    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#' || line[0] == '%' || line[0] == '@') continue;
        const auto c1 = line.find(':');
        const auto c2 = line.find(':', c1 == std::string::npos ? c1 : c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw ParseError("transaction DB line " + std::to_string(lineno) +
                             ": expected `items : total : utilities`");
        RawTrans rt;
        {
            std::istringstream ts(line.substr(0, c1));
            std::string tok;
            while (ts >> tok) rt.tokens.push_back(tok);
        }
        {
            std::istringstream us(line.substr(c2 + 1));
            long long u;
            while (us >> u) rt.utils.push_back(u);
        }
        if (rt.tokens.size() != rt.utils.size())
            throw ParseError("transaction DB line " + std::to_string(lineno) +
                             ": item/utility count mismatch");
        long long declared;
        try {
            declared = std::stoll(line.substr(c1 + 1, c2 - c1 - 1));
        } catch (const std::exception&) {
            throw ParseError("transaction DB line " + std::to_string(lineno) +
                             ": bad total utility");
        }
        long long total = 0;
        for (long long u : rt.utils) total += u;
        if (declared != total)
            throw ParseError("transaction DB line " + std::to_string(lineno) +
                             ": declared total " + std::to_string(declared) +
                             " != sum of utilities " + std::to_string(total));
        for (const auto& t : rt.tokens) index.emplace(t, 0);
        raw.push_back(std::move(rt));
    }

    TransactionDB db;
    for (auto& [tok, idx] : index) {  // std::map: lexicographic item order
        idx = static_cast<int>(db.item_names.size());
        db.item_names.push_back(tok);
    }
    db.item_count = static_cast<int>(db.item_names.size());
    for (std::size_t t = 0; t < raw.size(); ++t) {
        Transaction tr;
        tr.example_id = static_cast<int>(t);
        for (std::size_t i = 0; i < raw[t].tokens.size(); ++i)
            tr.entries.push_back({index.at(raw[t].tokens[i]), raw[t].utils[i]});
        std::sort(tr.entries.begin(), tr.entries.end(),
                  [](const auto& a, const auto& b) { return a.item < b.item; });
        for (std::size_t i = 1; i < tr.entries.size(); ++i)
            if (tr.entries[i].item == tr.entries[i - 1].item)
                throw ParseError("transaction DB: duplicate item in transaction " +
                                 std::to_string(t));
        db.transactions.push_back(std::move(tr));
    }
    return db;
}

TransactionDB TransactionDB::parse(std::istream& is) { return parse_db(is); }

TransactionDB TransactionDB::parse_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw DataError("cannot read '" + path + "'");
    return parse_db(is);
}

}  // namespace shapfold
