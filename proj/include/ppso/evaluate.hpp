#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "ppso/detail/format.hpp"
#include "ppso/error.hpp"

namespace ppso {

/// Rows are actual classes, columns predicted classes.
class ConfusionMatrix {
public:
    ConfusionMatrix() = default;
    explicit ConfusionMatrix(std::size_t classes) : classes_(classes), counts_(classes * classes, 0) {}

    std::size_t classes() const noexcept { return classes_; }
    std::uint64_t at(std::size_t actual, std::size_t predicted) const { return counts_.at(actual * classes_ + predicted); }
    void add(std::size_t actual, std::size_t predicted, std::uint64_t n = 1) {
        counts_.at(actual * classes_ + predicted) += n;
    }

    std::uint64_t total() const noexcept {
        std::uint64_t s = 0;
        for (auto c : counts_) {
            s += c;
        }
        return s;
    }
    std::uint64_t correct() const noexcept {
        std::uint64_t s = 0;
        for (std::size_t k = 0; k < classes_; ++k) {
            s += counts_[k * classes_ + k];
        }
        return s;
    }
    std::uint64_t row_sum(std::size_t actual) const {
        std::uint64_t s = 0;
        for (std::size_t p = 0; p < classes_; ++p) {
            s += at(actual, p);
        }
        return s;
    }
    std::uint64_t column_sum(std::size_t predicted) const {
        std::uint64_t s = 0;
        for (std::size_t a = 0; a < classes_; ++a) {
            s += at(a, predicted);
        }
        return s;
    }

    double accuracy() const {
        const auto t = total();
        if (t == 0) {
            throw EmptyInputError("accuracy of an empty confusion matrix");
        }
        return static_cast<double>(correct()) / static_cast<double>(t);
    }

    /// Grid CSV: a header of class names, then one row per actual class.
    void write_csv(std::ostream& out, std::span<const std::string> class_names = {}) const {
        const auto name = [&](std::size_t k) {
            return k < class_names.size() ? class_names[k] : std::to_string(k);
        };
        out << "actual\\predicted";
        for (std::size_t k = 0; k < classes_; ++k) {
            out << ',' << name(k);
        }
        out << '\n';
        for (std::size_t a = 0; a < classes_; ++a) {
            out << name(a);
            for (std::size_t p = 0; p < classes_; ++p) {
                out << ',' << at(a, p);
            }
            out << '\n';
        }
    }

    static ConfusionMatrix read_csv(std::istream& in, std::vector<std::string>* class_names = nullptr) {
        std::string line;
        if (!std::getline(in, line)) {
            throw FormatError("confusion CSV is empty");
        }
        std::vector<std::string> header;
        {
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ',')) {
                header.emplace_back(detail::trim(cell));
            }
        }
        if (header.size() < 2) {
            throw FormatError("confusion CSV header has no classes");
        }
        ConfusionMatrix cm(header.size() - 1);
        for (std::size_t a = 0; a < cm.classes(); ++a) {
            if (!std::getline(in, line)) {
                throw FormatError("confusion CSV has too few rows");
            }
            std::stringstream ss(line);
            std::string cell;
            std::getline(ss, cell, ',');
            for (std::size_t p = 0; p < cm.classes(); ++p) {
                if (!std::getline(ss, cell, ',')) {
                    throw FormatError("confusion CSV row " + std::to_string(a + 2) + " is short");
                }
                const auto v = detail::parse_uint(cell);
                if (!v) {
                    throw FormatError("confusion CSV row " + std::to_string(a + 2) + " has a bad count");
                }
                cm.add(a, p, *v);
            }
        }
        if (class_names) {
            class_names->assign(header.begin() + 1, header.end());
        }
        return cm;
    }

    bool operator==(const ConfusionMatrix&) const = default;

private:
    std::size_t classes_ = 0;
    std::vector<std::uint64_t> counts_;
};

inline ConfusionMatrix confusion_matrix(std::span<const std::size_t> actual, std::span<const std::size_t> predicted,
                                        std::size_t classes) {
    if (actual.size() != predicted.size()) {
        throw InputError("actual and predicted label sequences differ in length");
    }
    if (classes == 0) {
        throw InputError("confusion matrix needs at least one class");
    }
    ConfusionMatrix cm(classes);
    for (std::size_t i = 0; i < actual.size(); ++i) {
        if (actual[i] >= classes || predicted[i] >= classes) {
            throw IndexError("class index out of range at sample " + std::to_string(i));
        }
        cm.add(actual[i], predicted[i]);
    }
    return cm;
}

struct PerClassMetrics {
    std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f_measure = 0.0;
    bool precision_undefined = false;  // tp + fp == 0, reported as 0
    bool recall_undefined = false;     // tp + fn == 0, reported as 0
};

struct ClassMetrics {
    std::vector<PerClassMetrics> per_class;
    double accuracy = 0.0;
    double macro_f = 0.0;
    std::optional<double> positive_f;  // class 1 F-measure, binary problems only

    /// Binary problems headline the positive class; others the macro average.
    double headline_f() const noexcept { return positive_f.value_or(macro_f); }
};

/// Harmonic mean of precision and recall; 0 when both are 0.
inline double f_measure(double precision, double recall) noexcept {
    const double denom = precision + recall;
    return denom > 0.0 ? 2.0 * (precision * recall / denom) : 0.0;
}

/// One-vs-rest precision, recall and F-measure for every class.
inline ClassMetrics class_metrics(const ConfusionMatrix& cm) {
    const std::uint64_t total = cm.total();
    if (cm.classes() == 0 || total == 0) {
        throw EmptyInputError("class metrics of an empty confusion matrix");
    }
    ClassMetrics m;
    m.accuracy = cm.accuracy();
    double f_sum = 0.0;
    for (std::size_t c = 0; c < cm.classes(); ++c) {
        PerClassMetrics pc;
        pc.tp = cm.at(c, c);
        pc.fp = cm.column_sum(c) - pc.tp;
        pc.fn = cm.row_sum(c) - pc.tp;
        pc.tn = total - pc.tp - pc.fp - pc.fn;
        pc.precision_undefined = pc.tp + pc.fp == 0;
        pc.recall_undefined = pc.tp + pc.fn == 0;
        pc.precision = pc.precision_undefined ? 0.0 : static_cast<double>(pc.tp) / static_cast<double>(pc.tp + pc.fp);
        pc.recall = pc.recall_undefined ? 0.0 : static_cast<double>(pc.tp) / static_cast<double>(pc.tp + pc.fn);
        pc.f_measure = f_measure(pc.precision, pc.recall);
        f_sum += pc.f_measure;
        m.per_class.push_back(pc);
    }
    m.macro_f = f_sum / static_cast<double>(cm.classes());
    if (cm.classes() == 2) {
        m.positive_f = m.per_class[1].f_measure;
    }
    return m;
}

}  // namespace ppso
