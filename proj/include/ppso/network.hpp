#pragma once

// Single-hidden-layer feed-forward network driven by a flat parameter vector.
//
// Parameter layout for a p-q-r network (D = pq + qr + q + r):
//   [0, pq)              input->hidden weights, hidden-major (W1[j][i] at j*p + i)
//   [pq, pq+q)           hidden biases
//   [pq+q, pq+q+qr)      hidden->output weights, output-major (W2[k][j] at pq+q + k*q + j)
//   [pq+q+qr, D)         output biases

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ppso/error.hpp"
#include "ppso/matrix.hpp"

namespace ppso {

using ParamVector = std::vector<double>;

struct Topology {
    std::size_t inputs = 1;   // p
    std::size_t hidden = 1;   // q
    std::size_t outputs = 1;  // r

    static Topology make(std::size_t p, std::size_t q, std::size_t r) {
        if (p == 0 || q == 0 || r == 0) {
            throw ConfigError("topology layer sizes must be positive");
        }
        return Topology{p, q, r};
    }

    /// Default hidden size 2p + 1.
    static Topology with_default_hidden(std::size_t p, std::size_t r) { return make(p, 2 * p + 1, r); }

    std::size_t dimension() const noexcept { return inputs * hidden + hidden * outputs + hidden + outputs; }

    std::size_t hidden_bias_offset() const noexcept { return inputs * hidden; }
    std::size_t output_weight_offset() const noexcept { return inputs * hidden + hidden; }
    std::size_t output_bias_offset() const noexcept { return inputs * hidden + hidden + hidden * outputs; }

    bool operator==(const Topology&) const = default;
};

struct NetworkWeights {
    Topology topology;
    std::vector<double> w1;  // q x p, row-major
    std::vector<double> b1;  // q
    std::vector<double> w2;  // r x q, row-major
    std::vector<double> b2;  // r

    double input_weight(std::size_t hidden, std::size_t input) const {
        return w1[hidden * topology.inputs + input];
    }
    double output_weight(std::size_t output, std::size_t hidden) const {
        return w2[output * topology.hidden + hidden];
    }

    bool operator==(const NetworkWeights&) const = default;
};

struct LabeledSample {
    std::vector<double> features;
    std::vector<double> target;
};

/// Samples packed contiguously: features N x p, one-hot targets N x r.
class SampleSet {
public:
    SampleSet() = default;
    SampleSet(Matrix features, Matrix targets) : features_(std::move(features)), targets_(std::move(targets)) {
        if (features_.rows() != targets_.rows()) {
            throw DimensionError("feature and target row counts differ");
        }
    }
    explicit SampleSet(std::span<const LabeledSample> samples) {
        for (const auto& s : samples) {
            push_back(s);
        }
    }

    void push_back(const LabeledSample& s) {
        features_.append_row(s.features);
        targets_.append_row(s.target);
    }

    std::size_t size() const noexcept { return features_.rows(); }
    bool empty() const noexcept { return size() == 0; }
    std::size_t feature_count() const noexcept { return features_.cols(); }
    std::size_t target_count() const noexcept { return targets_.cols(); }

    std::span<const double> features(std::size_t i) const noexcept { return features_.row(i); }
    std::span<const double> target(std::size_t i) const noexcept { return targets_.row(i); }

    const Matrix& feature_matrix() const noexcept { return features_; }
    const Matrix& target_matrix() const noexcept { return targets_; }

private:
    Matrix features_;
    Matrix targets_;
};

/// Logistic function; saturates to exactly 0 or 1 instead of overflowing.
inline double sigmoid(double x) noexcept {
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

inline void check_length(std::size_t got, std::size_t want, const char* what) {
    if (got != want) {
        throw DimensionError(std::string(what) + " has length " + std::to_string(got) + ", expected " +
                             std::to_string(want));
    }
}

inline NetworkWeights decode(std::span<const double> params, const Topology& topo) {
    check_length(params.size(), topo.dimension(), "parameter vector");
    const auto slice = [&](std::size_t from, std::size_t n) {
        return std::vector<double>(params.begin() + static_cast<std::ptrdiff_t>(from),
                                   params.begin() + static_cast<std::ptrdiff_t>(from + n));
    };
    NetworkWeights net;
    net.topology = topo;
    net.w1 = slice(0, topo.inputs * topo.hidden);
    net.b1 = slice(topo.hidden_bias_offset(), topo.hidden);
    net.w2 = slice(topo.output_weight_offset(), topo.hidden * topo.outputs);
    net.b2 = slice(topo.output_bias_offset(), topo.outputs);
    return net;
}

inline ParamVector encode(const NetworkWeights& net) {
    const Topology& t = net.topology;
    check_length(net.w1.size(), t.inputs * t.hidden, "W1");
    check_length(net.b1.size(), t.hidden, "hidden biases");
    check_length(net.w2.size(), t.hidden * t.outputs, "W2");
    check_length(net.b2.size(), t.outputs, "output biases");
    ParamVector out;
    out.reserve(t.dimension());
    out.insert(out.end(), net.w1.begin(), net.w1.end());
    out.insert(out.end(), net.b1.begin(), net.b1.end());
    out.insert(out.end(), net.w2.begin(), net.w2.end());
    out.insert(out.end(), net.b2.begin(), net.b2.end());
    return out;
}

namespace detail {

// Four independent accumulators; fixed order keeps results bit-reproducible.
inline double dot(const double* a, const double* b, std::size_t n) noexcept {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += a[i] * b[i];
        s1 += a[i + 1] * b[i + 1];
        s2 += a[i + 2] * b[i + 2];
        s3 += a[i + 3] * b[i + 3];
    }
    for (; i < n; ++i) {
        s0 += a[i] * b[i];
    }
    return (s0 + s1) + (s2 + s3);
}

// Forward pass over raw layout pointers; `hidden` is scratch of length q.
inline void forward_raw(const Topology& t, const double* w1, const double* b1, const double* w2, const double* b2,
                        const double* input, double* hidden, double* out) noexcept {
    for (std::size_t j = 0; j < t.hidden; ++j) {
        hidden[j] = sigmoid(dot(w1 + j * t.inputs, input, t.inputs) + b1[j]);
    }
    for (std::size_t k = 0; k < t.outputs; ++k) {
        out[k] = sigmoid(dot(w2 + k * t.hidden, hidden, t.hidden) + b2[k]);
    }
}

// Sum over samples and outputs of (target - output)^2.
inline double squared_error_sum(const Topology& t, const double* w1, const double* b1, const double* w2,
                                const double* b2, const SampleSet& samples) {
    if (samples.empty()) {
        throw EmptyInputError("sample list is empty");
    }
    check_length(samples.feature_count(), t.inputs, "sample features");
    check_length(samples.target_count(), t.outputs, "sample targets");
    std::vector<double> hidden(t.hidden);
    std::vector<double> out(t.outputs);
    double total = 0.0;
    for (std::size_t n = 0; n < samples.size(); ++n) {
        forward_raw(t, w1, b1, w2, b2, samples.features(n).data(), hidden.data(), out.data());
        const auto target = samples.target(n);
        for (std::size_t k = 0; k < t.outputs; ++k) {
            const double diff = target[k] - out[k];
            total += diff * diff;
        }
    }
    return total;
}

inline double squared_error_sum(const NetworkWeights& net, const SampleSet& samples) {
    return squared_error_sum(net.topology, net.w1.data(), net.b1.data(), net.w2.data(), net.b2.data(), samples);
}

}  // namespace detail

inline std::vector<double> forward(const NetworkWeights& net, std::span<const double> input) {
    const Topology& t = net.topology;
    check_length(input.size(), t.inputs, "input");
    std::vector<double> hidden(t.hidden);
    std::vector<double> out(t.outputs);
    detail::forward_raw(t, net.w1.data(), net.b1.data(), net.w2.data(), net.b2.data(), input.data(), hidden.data(),
                        out.data());
    return out;
}

/// Half the summed squared error over every sample and output.
inline double total_error(const NetworkWeights& net, const SampleSet& samples) {
    return 0.5 * detail::squared_error_sum(net, samples);
}

/// Mean over samples of the summed squared output error; the optimizers' objective.
inline double mse_fitness(std::span<const double> params, const Topology& topo, const SampleSet& samples) {
    check_length(params.size(), topo.dimension(), "parameter vector");
    const double* p = params.data();
    const double sum = detail::squared_error_sum(topo, p, p + topo.hidden_bias_offset(), p + topo.output_weight_offset(),
                                                 p + topo.output_bias_offset(), samples);
    return sum / static_cast<double>(samples.size());
}

/// Index of the largest output; ties go to the lowest index.
inline std::size_t argmax(std::span<const double> values) noexcept {
    std::size_t best = 0;
    for (std::size_t k = 1; k < values.size(); ++k) {
        if (values[k] > values[best]) {
            best = k;
        }
    }
    return best;
}

inline std::size_t predict(const NetworkWeights& net, std::span<const double> input) {
    return argmax(forward(net, input));
}

}  // namespace ppso
