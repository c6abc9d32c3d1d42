#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ppso/network.hpp"

using namespace ppso;

namespace {

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Straightforward per-neuron loops, written independently of the library layout helpers.
std::vector<double> naive_forward(const std::vector<std::vector<double>>& w1, const std::vector<double>& b1,
                                  const std::vector<std::vector<double>>& w2, const std::vector<double>& b2,
                                  const std::vector<double>& x) {
    std::vector<double> h;
    for (std::size_t j = 0; j < w1.size(); ++j) {
        double z = b1[j];
        for (std::size_t i = 0; i < x.size(); ++i) {
            z += w1[j][i] * x[i];
        }
        h.push_back(logistic(z));
    }
    std::vector<double> o;
    for (std::size_t k = 0; k < w2.size(); ++k) {
        double z = b2[k];
        for (std::size_t j = 0; j < h.size(); ++j) {
            z += w2[k][j] * h[j];
        }
        o.push_back(logistic(z));
    }
    return o;
}

struct Fixture {
    std::vector<std::vector<double>> w1;
    std::vector<double> b1;
    std::vector<std::vector<double>> w2;
    std::vector<double> b2;

    NetworkWeights net() const {
        NetworkWeights n;
        n.topology = Topology::make(w1[0].size(), w1.size(), w2.size());
        for (const auto& row : w1) {
            n.w1.insert(n.w1.end(), row.begin(), row.end());
        }
        n.b1 = b1;
        for (const auto& row : w2) {
            n.w2.insert(n.w2.end(), row.begin(), row.end());
        }
        n.b2 = b2;
        return n;
    }
};

const Fixture kTiny{{{0.5, -0.25}, {0.1, 0.3}}, {0.05, -0.1}, {{0.7, -0.4}}, {0.2}};
const Fixture kWide{{{0.2, -0.1, 0.4}, {-0.3, 0.5, 0.1}}, {0.0, 0.2}, {{1.0, -1.0}, {0.5, 0.25}}, {-0.1, 0.1}};
const Fixture kDeep{{{1.5}, {-2.0}, {0.25}, {0.0}}, {0.1, 0.2, -0.3, 0.4}, {{0.3, -0.6, 0.9, 1.2}}, {-0.5}};

SampleSet samples_for(const std::vector<std::vector<double>>& xs, const std::vector<std::vector<double>>& ts) {
    SampleSet s;
    for (std::size_t n = 0; n < xs.size(); ++n) {
        s.push_back({xs[n], ts[n]});
    }
    return s;
}

}  // namespace

TEST(Topology, DimensionCountsEveryParameter) {
    EXPECT_EQ(Topology::make(4, 9, 3).dimension(), 4u * 9 + 9 * 3 + 9 + 3);
    EXPECT_EQ(Topology::with_default_hidden(30, 2).hidden, 61u);
    EXPECT_EQ(Topology::with_default_hidden(30, 2).dimension(), 2015u);
    EXPECT_THROW(Topology::make(0, 1, 1), ConfigError);
}

TEST(Network, HandComputedForwardPass) {
    // h = (s(0.05), s(0.6)); y = s(0.7 h0 - 0.4 h1 + 0.2)
    const auto out = forward(kTiny.net(), std::vector<double>{1.0, 2.0});
    ASSERT_EQ(out.size(), 1u);
    EXPECT_NEAR(out[0], 0.5745612349305157, 1e-12);

    const auto wide = forward(kWide.net(), std::vector<double>{1.0, -1.0, 2.0});
    EXPECT_NEAR(wide[0], 0.5619174932419235, 1e-12);
    EXPECT_NEAR(wide[1], 0.6400216556713167, 1e-12);
}

TEST(Network, ForwardMatchesNaiveLoops) {
    for (const Fixture* f : {&kTiny, &kWide, &kDeep}) {
        const NetworkWeights net = f->net();
        std::mt19937_64 gen(5);
        std::uniform_real_distribution<double> u(-3.0, 3.0);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<double> x(net.topology.inputs);
            for (auto& v : x) {
                v = u(gen);
            }
            const auto want = naive_forward(f->w1, f->b1, f->w2, f->b2, x);
            const auto got = forward(net, x);
            for (std::size_t k = 0; k < want.size(); ++k) {
                EXPECT_NEAR(got[k], want[k], 1e-12);
            }
        }
    }
}

TEST(Network, ErrorFunctionsMatchOracle) {
    const std::vector<std::vector<double>> xs = {{1.0, 2.0}, {-1.0, 0.5}, {0.0, 0.0}, {3.0, -2.0}};
    const std::vector<std::vector<double>> ts = {{1.0}, {0.0}, {1.0}, {0.0}};
    const std::vector<std::vector<double>> xw = {{1.0, -1.0, 2.0}, {0.5, 0.5, 0.5}, {-2.0, 1.0, 0.0}};
    const std::vector<std::vector<double>> tw = {{1.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}};
    const std::vector<std::vector<double>> xd = {{0.3}, {-0.7}, {1.1}, {2.0}, {-1.5}};
    const std::vector<std::vector<double>> td = {{1.0}, {0.0}, {1.0}, {0.0}, {0.0}};
    const std::tuple<const Fixture*, const std::vector<std::vector<double>>*, const std::vector<std::vector<double>>*>
        cases[] = {{&kTiny, &xs, &ts}, {&kWide, &xw, &tw}, {&kDeep, &xd, &td}};
    for (const auto& [f, x, t] : cases) {
        double sum = 0.0;
        for (std::size_t n = 0; n < x->size(); ++n) {
            const auto o = naive_forward(f->w1, f->b1, f->w2, f->b2, (*x)[n]);
            for (std::size_t k = 0; k < o.size(); ++k) {
                sum += ((*t)[n][k] - o[k]) * ((*t)[n][k] - o[k]);
            }
        }
        const NetworkWeights net = f->net();
        const SampleSet samples = samples_for(*x, *t);
        EXPECT_NEAR(total_error(net, samples), 0.5 * sum, 1e-9);
        EXPECT_NEAR(mse_fitness(encode(net), net.topology, samples), sum / static_cast<double>(x->size()), 1e-9);
    }
}

TEST(Network, ParameterLayout) {
    const Topology t = Topology::make(2, 3, 2);
    ParamVector params(t.dimension());
    for (std::size_t i = 0; i < params.size(); ++i) {
        params[i] = static_cast<double>(i);
    }
    const NetworkWeights net = decode(params, t);
    EXPECT_EQ(net.input_weight(1, 0), 2.0);  // hidden 1, input 0 at 1 * p + 0
    EXPECT_EQ(net.input_weight(2, 1), 5.0);
    EXPECT_EQ(net.b1, (std::vector<double>{6.0, 7.0, 8.0}));
    EXPECT_EQ(net.output_weight(0, 2), 11.0);
    EXPECT_EQ(net.output_weight(1, 0), 12.0);
    EXPECT_EQ(net.b2, (std::vector<double>{15.0, 16.0}));
    EXPECT_EQ(encode(net), params);
}

TEST(Network, EncodeDecodeRoundTrip) {
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (const Topology t : {Topology::make(4, 9, 3), Topology::make(1, 1, 1), Topology::make(13, 27, 3)}) {
        ParamVector params(t.dimension());
        for (auto& v : params) {
            v = u(gen);
        }
        EXPECT_EQ(encode(decode(params, t)), params);
    }
}

TEST(Network, OutputsStayInsideUnitInterval) {
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const Topology t = Topology::make(5, 11, 3);
    for (int trial = 0; trial < 200; ++trial) {
        ParamVector params(t.dimension());
        for (auto& v : params) {
            v = u(gen);
        }
        std::vector<double> x(5);
        for (auto& v : x) {
            v = u(gen);
        }
        for (double o : forward(decode(params, t), x)) {
            EXPECT_GT(o, 0.0);
            EXPECT_LT(o, 1.0);
        }
    }
}

TEST(Network, SigmoidIsStableAtExtremes) {
    EXPECT_EQ(sigmoid(0.0), 0.5);
    EXPECT_EQ(sigmoid(1000.0), 1.0);
    EXPECT_EQ(sigmoid(-1000.0), 0.0);
    for (double x : {0.1, 1.0, 5.0, 20.0}) {
        EXPECT_NEAR(sigmoid(-x), 1.0 - sigmoid(x), 1e-15);
    }
}

TEST(Network, Argmax) {
    EXPECT_EQ(argmax(std::vector<double>{0.1, 0.9, 0.3}), 1u);
    EXPECT_EQ(argmax(std::vector<double>{0.5, 0.5, 0.2}), 0u);
    EXPECT_EQ(argmax(std::vector<double>{0.2, 0.7, 0.7}), 1u);
    EXPECT_EQ(predict(kWide.net(), std::vector<double>{1.0, -1.0, 2.0}), 1u);
}

TEST(Network, Errors) {
    const NetworkWeights net = kTiny.net();
    EXPECT_THROW(forward(net, std::vector<double>{1.0}), DimensionError);
    EXPECT_THROW(decode(std::vector<double>(3), net.topology), DimensionError);
    EXPECT_THROW(total_error(net, SampleSet{}), EmptyInputError);
    const SampleSet wrong = samples_for({{1.0, 2.0, 3.0}}, {{1.0}});
    EXPECT_THROW(total_error(net, wrong), DimensionError);
    EXPECT_THROW(SampleSet(Matrix(2, 2), Matrix(3, 1)), DimensionError);
}
