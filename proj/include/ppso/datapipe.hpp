#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ppso/detail/format.hpp"
#include "ppso/error.hpp"
#include "ppso/matrix.hpp"
#include "ppso/network.hpp"
#include "ppso/rng.hpp"

namespace ppso {

struct Dataset {
    std::string name;
    Matrix features;                   // N x p
    std::vector<std::size_t> labels;   // N class indices
    std::vector<std::string> class_names;

    std::size_t size() const noexcept { return labels.size(); }
    std::size_t feature_count() const noexcept { return features.cols(); }
    std::size_t class_count() const noexcept { return class_names.size(); }

    void validate() const {
        if (features.rows() != labels.size()) {
            throw DataError(name + ": feature rows and labels differ in count");
        }
        if (size() < 2) {
            throw DataError(name + ": dataset needs at least 2 rows");
        }
        if (class_count() < 2) {
            throw DataError(name + ": dataset needs at least 2 classes");
        }
        for (std::size_t l : labels) {
            if (l >= class_count()) {
                throw DataError(name + ": label index out of range");
            }
        }
    }

    std::vector<std::size_t> class_sizes() const {
        std::vector<std::size_t> sizes(class_count(), 0);
        for (std::size_t l : labels) {
            ++sizes.at(l);
        }
        return sizes;
    }
};

/// Which CSV column holds the class label; nullopt means the last one.
using LabelColumn = std::optional<std::size_t>;

namespace detail {

inline std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        cells.emplace_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                                   : comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return cells;
}

inline std::string stem(const std::string& path) {
    const auto slash = path.find_last_of("/\\");
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    const auto dot = base.find_last_of('.');
    return dot == std::string::npos ? base : base.substr(0, dot);
}

}  // namespace detail

/// Parse a comma-separated dataset. A first row with any non-numeric feature
/// cell is taken as a header. Labels become class indices in order of first
/// appearance.
inline Dataset parse_csv(std::istream& in, const std::string& name, LabelColumn label_column = std::nullopt) {
    Dataset ds;
    ds.name = name;
    std::map<std::string, std::size_t, std::less<>> class_index;
    std::string line;
    std::size_t line_no = 0;
    std::size_t columns = 0;
    std::size_t label_at = 0;
    bool first_row = true;
    std::vector<double> row;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) {
            line.erase(0, 3);
        }
        if (detail::trim(line).empty()) {
            continue;
        }
        const auto cells = detail::split_csv_line(line);
        if (first_row) {
            columns = cells.size();
            if (columns < 2) {
                throw FormatError(name + " row " + std::to_string(line_no) + ": need a feature and a label column");
            }
            label_at = label_column.value_or(columns - 1);
            if (label_at >= columns) {
                throw FormatError(name + ": label column " + std::to_string(label_at) + " beyond " +
                                  std::to_string(columns) + " columns");
            }
        } else if (cells.size() != columns) {
            throw FormatError(name + " row " + std::to_string(line_no) + ": expected " + std::to_string(columns) +
                              " columns, found " + std::to_string(cells.size()));
        }
        if (first_row) {
            first_row = false;
            bool header = false;
            for (std::size_t c = 0; c < columns; ++c) {
                if (c != label_at && !cells[c].empty() && !detail::parse_double(cells[c])) {
                    header = true;
                }
            }
            if (header) {
                continue;
            }
        }
        row.clear();
        for (std::size_t c = 0; c < columns; ++c) {
            if (cells[c].empty()) {
                throw MissingValueError(name + " row " + std::to_string(line_no) + ", column " +
                                        std::to_string(c + 1) + ": missing value");
            }
            if (c == label_at) {
                continue;
            }
            const auto value = detail::parse_double(cells[c]);
            if (!value || !std::isfinite(*value)) {
                throw ParseError(name + " row " + std::to_string(line_no) + ", column " + std::to_string(c + 1) +
                                 ": '" + cells[c] + "' is not a number");
            }
            row.push_back(*value);
        }
        const std::string& label = cells[label_at];
        auto it = class_index.find(label);
        if (it == class_index.end()) {
            it = class_index.emplace(label, ds.class_names.size()).first;
            ds.class_names.push_back(label);
        }
        ds.labels.push_back(it->second);
        ds.features.append_row(row);
    }
    if (ds.labels.empty()) {
        throw FormatError(name + ": no data rows");
    }
    return ds;
}

inline Dataset load_csv(const std::string& path, LabelColumn label_column = std::nullopt) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open dataset " + path);
    }
    return parse_csv(in, detail::stem(path), label_column);
}

/// Per-feature min-max statistics mapping onto [-1, 1].
struct FeatureScaler {
    std::vector<double> min;
    std::vector<double> max;

    static FeatureScaler fit(const Matrix& features, std::span<const std::size_t> rows) {
        FeatureScaler s;
        const std::size_t p = features.cols();
        s.min.assign(p, std::numeric_limits<double>::infinity());
        s.max.assign(p, -std::numeric_limits<double>::infinity());
        for (std::size_t r : rows) {
            for (std::size_t d = 0; d < p; ++d) {
                s.min[d] = std::min(s.min[d], features(r, d));
                s.max[d] = std::max(s.max[d], features(r, d));
            }
        }
        return s;
    }

    static FeatureScaler fit(const Matrix& features) {
        std::vector<std::size_t> rows(features.rows());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            rows[i] = i;
        }
        return fit(features, rows);
    }

    /// Constant features map to 0.
    double apply(std::size_t d, double x) const noexcept {
        const double range = max[d] - min[d];
        if (!(range > 0.0)) {
            return 0.0;
        }
        return 2.0 * (x - min[d]) / range - 1.0;
    }

    Matrix apply(const Matrix& features) const {
        Matrix out(features.rows(), features.cols());
        for (std::size_t r = 0; r < features.rows(); ++r) {
            for (std::size_t d = 0; d < features.cols(); ++d) {
                out(r, d) = apply(d, features(r, d));
            }
        }
        return out;
    }
};

/// Min-max normalize every feature to [-1, 1] using statistics of the whole dataset.
inline Dataset normalize(const Dataset& dataset) {
    if (dataset.size() == 0) {
        throw EmptyInputError("cannot normalize an empty dataset");
    }
    Dataset out = dataset;
    out.features = FeatureScaler::fit(dataset.features).apply(dataset.features);
    return out;
}

inline Dataset subset(const Dataset& dataset, std::span<const std::size_t> rows) {
    Dataset out;
    out.name = dataset.name;
    out.class_names = dataset.class_names;
    out.features = Matrix(rows.size(), dataset.feature_count());
    out.labels.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto src = dataset.features.row(rows[i]);
        std::copy(src.begin(), src.end(), out.features.row(i).begin());
        out.labels.push_back(dataset.labels.at(rows[i]));
    }
    return out;
}

struct DataSplit {
    std::vector<std::size_t> train_indices;  // ascending
    std::vector<std::size_t> test_indices;   // ascending
    Dataset train;
    Dataset test;
    double fraction = 0.8;
    std::uint64_t seed = 0;
    bool stratified = true;
};

namespace detail {

inline void shuffle(std::vector<std::size_t>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::swap(v[i - 1], v[rng.below(i)]);
    }
}

}  // namespace detail

/// Seeded hold-out split with |train| = round(fraction * N).
///
/// Stratified splits give each class floor(fraction * n_c) training rows and
/// hand the remaining slots to the classes with the largest fractional parts
/// (lower class index first on ties).
inline DataSplit holdout_split(const Dataset& dataset, double fraction = 0.8, std::uint64_t seed = 0,
                               bool stratified = true) {
    if (!(fraction > 0.0 && fraction < 1.0)) {
        throw ConfigError("split fraction must lie strictly between 0 and 1");
    }
    dataset.validate();
    const std::size_t n = dataset.size();
    const auto train_total = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
    if (train_total == 0 || train_total >= n) {
        throw DataError(dataset.name + ": split leaves an empty train or test set");
    }
    Rng rng(seed, 0x5b117ULL);
    DataSplit split;
    split.fraction = fraction;
    split.seed = seed;
    split.stratified = stratified;

    if (stratified) {
        const std::size_t k = dataset.class_count();
        std::vector<std::vector<std::size_t>> groups(k);
        for (std::size_t i = 0; i < n; ++i) {
            groups[dataset.labels[i]].push_back(i);
        }
        std::vector<std::size_t> quota(k);
        std::vector<double> remainder(k);
        std::size_t assigned = 0;
        for (std::size_t c = 0; c < k; ++c) {
            const double exact = fraction * static_cast<double>(groups[c].size());
            quota[c] = static_cast<std::size_t>(std::floor(exact));
            remainder[c] = exact - static_cast<double>(quota[c]);
            assigned += quota[c];
        }
        std::vector<std::size_t> order(k);
        for (std::size_t c = 0; c < k; ++c) {
            order[c] = c;
        }
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
        for (std::size_t i = 0; assigned < train_total && i < k; ++i) {
            if (quota[order[i]] < groups[order[i]].size()) {
                ++quota[order[i]];
                ++assigned;
            }
        }
        for (std::size_t c = 0; c < k; ++c) {
            detail::shuffle(groups[c], rng);
            split.train_indices.insert(split.train_indices.end(), groups[c].begin(),
                                       groups[c].begin() + static_cast<std::ptrdiff_t>(quota[c]));
            split.test_indices.insert(split.test_indices.end(),
                                      groups[c].begin() + static_cast<std::ptrdiff_t>(quota[c]), groups[c].end());
        }
    } else {
        std::vector<std::size_t> all(n);
        for (std::size_t i = 0; i < n; ++i) {
            all[i] = i;
        }
        detail::shuffle(all, rng);
        split.train_indices.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(train_total));
        split.test_indices.assign(all.begin() + static_cast<std::ptrdiff_t>(train_total), all.end());
    }
    std::sort(split.train_indices.begin(), split.train_indices.end());
    std::sort(split.test_indices.begin(), split.test_indices.end());

    split.train = subset(dataset, split.train_indices);
    split.test = subset(dataset, split.test_indices);
    const auto present = split.train.class_sizes();
    for (std::size_t c = 0; c < present.size(); ++c) {
        if (present[c] == 0) {
            throw StratificationError(dataset.name + ": class '" + dataset.class_names[c] +
                                      "' has no rows in the training split");
        }
    }
    return split;
}

inline Matrix one_hot(std::span<const std::size_t> labels, std::size_t classes) {
    Matrix out(labels.size(), classes);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] >= classes) {
            throw IndexError("label " + std::to_string(labels[i]) + " out of range for " + std::to_string(classes) +
                             " classes");
        }
        out(i, labels[i]) = 1.0;
    }
    return out;
}

/// Network-ready samples: features as-is, targets one-hot over every class.
inline SampleSet to_samples(const Dataset& dataset) {
    if (dataset.class_count() < 2) {
        throw DataError(dataset.name + ": a classifier needs at least 2 classes");
    }
    return SampleSet(dataset.features, one_hot(dataset.labels, dataset.class_count()));
}

}  // namespace ppso
