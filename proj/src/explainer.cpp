#include "shapfold/explainer.hpp"

#include <charconv>
#include <sstream>

namespace shapfold {

std::vector<BitRow> sample_background(const Dataset& dataset, int background_size,
                                      std::uint64_t seed) {
    const std::size_t n = dataset.examples.size();
    std::vector<int> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<int>(i);
    if (n > static_cast<std::size_t>(background_size)) {
        Rng rng(mix_seed(seed, 0xb06'5a3fULL));
        for (std::size_t j = n - 1; j > 0; --j) std::swap(ids[j], ids[rng.below(j + 1)]);
        ids.resize(static_cast<std::size_t>(background_size));
        std::sort(ids.begin(), ids.end());
    }
    std::vector<BitRow> rows;
    rows.reserve(ids.size());
    for (int id : ids) rows.push_back(dataset.examples[static_cast<std::size_t>(id)].bits);
    return rows;
}

ShapMatrix explain_dataset(const TreeEnsemble& model, const Dataset& dataset,
                           const ShapConfig& config) {
    if (model.item_count != static_cast<int>(dataset.item_count()))
        throw DataError("explain_dataset: model expects " + std::to_string(model.item_count) +
                        " items, dataset has " + std::to_string(dataset.item_count()));

    const auto background = sample_background(dataset, config.background_size, config.seed);
    const auto oracle = [&model](const std::uint8_t* bits) { return sigmoid(model.margin(bits)); };

    const int n_items = static_cast<int>(dataset.item_count());
    std::vector<int> game(dataset.item_count());
    for (int i = 0; i < n_items; ++i) game[static_cast<std::size_t>(i)] = i;

    ShapMatrix out;
    out.exact = n_items <= config.exact_cap;
    out.permutations = out.exact ? 0 : config.permutations;
    out.seed = config.seed;

    double base_acc = 0.0;
    for (const auto& b : background) base_acc += oracle(b.data());
    out.base_value = background.empty() ? 0.0 : base_acc / static_cast<double>(background.size());

    out.attributions.reserve(dataset.examples.size());
    for (const auto& ex : dataset.examples) {
        ShapResult r =
            out.exact
                ? shapley_exact(oracle, ex.bits, background, game, config.exact_cap)
                : shapley_sampled(oracle, ex.bits, background, game, config.permutations,
                                  mix_seed(config.seed, static_cast<std::uint64_t>(ex.id)));
        out.attributions.push_back(std::move(r.phi));
    }
    return out;
}

std::string ShapMatrix::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "# base_value=" << base_value << " mode=" << (exact ? "exact" : "sampled")
       << " permutations=" << permutations << " seed=" << seed << "\n";
    for (std::size_t i = 0; i < attributions.size(); ++i) {
        os << i;
        for (double v : attributions[i]) os << ',' << v;
        os << '\n';
    }
    return os.str();
}

ShapMatrix ShapMatrix::from_csv(const std::string& text) {
    ShapMatrix m;
    std::istringstream is(text);
    std::string line;
    std::size_t width = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto grab = [&](const std::string& key) -> std::string {
                auto pos = line.find(key + "=");
                if (pos == std::string::npos) return "";
                pos += key.size() + 1;
                auto end = line.find(' ', pos);
                return line.substr(pos, end == std::string::npos ? end : end - pos);
            };
            if (auto v = grab("base_value"); !v.empty()) m.base_value = std::stod(v);
            if (auto v = grab("mode"); !v.empty()) m.exact = v == "exact";
            if (auto v = grab("permutations"); !v.empty()) m.permutations = std::stoi(v);
            if (auto v = grab("seed"); !v.empty()) m.seed = std::stoull(v);
            continue;
        }
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        bool first = true;
        while (std::getline(ls, cell, ',')) {
            if (first) {  // example id column; rows must arrive in order
                if (std::stoul(cell) != m.attributions.size())
                    throw ParseError("attribution CSV: rows out of order");
                first = false;
                continue;
            }
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw ParseError("attribution CSV: bad number '" + cell + "'");
            }
        }
        if (width == 0) width = row.size();
        if (row.size() != width) throw ParseError("attribution CSV: ragged rows");
        m.attributions.push_back(std::move(row));
    }
    return m;
}

}  // namespace shapfold
