#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "oracles.h"
#include "phasevox/errors.h"
#include "phasevox/infotheory.h"

using namespace phasevox;

namespace {

std::vector<int> bin_counts(const std::vector<int>& codes) {
    std::map<int, int> m;
    for (int c : codes) m[c]++;
    std::vector<int> out;
    for (auto& [k, v] : m) out.push_back(v);
    return out;
}

}  // namespace

TEST_CASE("discretize") {
    SUBCASE("100 ascending values into 10 equal bins") {
        std::vector<double> x(100);
        for (int i = 0; i < 100; ++i) x[i] = i * 0.37 - 5.0;
        auto codes = discretize(x, 10);
        auto counts = bin_counts(codes);
        REQUIRE(counts.size() == 10);
        for (int c : counts) CHECK(c == 10);
        for (int i = 1; i < 100; ++i) CHECK(codes[i] >= codes[i - 1]);
    }
    SUBCASE("constant input collapses to one bin") {
        std::vector<double> x(200, 3.14);
        auto codes = discretize(x, 10);
        for (int c : codes) CHECK(c == 0);
        CHECK(bin_counts(codes).size() == 1);
    }
    SUBCASE("shuffled input gives the same bin multiset") {
        std::vector<double> x(500);
        std::mt19937 rng(3);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        for (auto& v : x) v = u(rng);
        auto sorted = x;
        std::sort(sorted.begin(), sorted.end());
        auto ca = bin_counts(discretize(x, 25));
        auto cb = bin_counts(discretize(sorted, 25));
        CHECK(ca == cb);
    }
    SUBCASE("fewer samples than bins raises") {
        std::vector<double> x(9, 1.0);
        CHECK_THROWS_AS(discretize(x, 10), DataError);
    }
    SUBCASE("every bin is non-empty") {
        std::vector<double> x(137);
        std::mt19937 rng(4);
        std::normal_distribution<double> g(0.0, 1.0);
        for (auto& v : x) v = g(rng);
        auto counts = bin_counts(discretize(x, 50));
        CHECK(counts.size() == 50);
        for (int c : counts) CHECK(c >= 1);
    }
}

TEST_CASE("entropy_bits") {
    SUBCASE("balanced binary labels give one bit") {
        std::vector<int> labels;
        for (int i = 0; i < 400; ++i) labels.push_back(i % 2);
        CHECK(entropy_bits(labels) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("single class gives zero") {
        std::vector<int> labels(100, 1);
        CHECK(entropy_bits(labels) == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("53/657 priors") {
        std::vector<int> labels(53, 0);
        labels.insert(labels.end(), 657, 1);
        CHECK(entropy_bits(labels) == doctest::Approx(0.3833).epsilon(1e-3 / 0.3833));
    }
    SUBCASE("empty input raises") {
        CHECK_THROWS_AS(entropy_bits({}), DataError);
    }
}

TEST_CASE("normalized_mi") {
    std::mt19937 rng(7);

    SUBCASE("a label copy carries all the information") {
        std::vector<double> f;
        std::vector<int> c;
        std::bernoulli_distribution coin(0.4);
        for (int i = 0; i < 5000; ++i) {
            const int l = coin(rng) ? 1 : 0;
            c.push_back(l);
            f.push_back(static_cast<double>(l));
        }
        CHECK(normalized_mi(f, c) == doctest::Approx(100.0).epsilon(0.1 / 100.0));
    }
    SUBCASE("independent noise carries almost none") {
        const int n = 100000;
        std::vector<double> f(n);
        std::vector<int> c(n);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::bernoulli_distribution coin(0.5);
        for (int i = 0; i < n; ++i) {
            f[i] = u(rng);
            c[i] = coin(rng) ? 1 : 0;
        }
        CHECK(normalized_mi(f, c) < 1.0);
    }
    SUBCASE("exactly invariant under strictly increasing transforms") {
        const int n = 4000;
        std::vector<double> f(n);
        std::vector<int> c(n);
        std::uniform_real_distribution<double> u(0.1, 3.0);
        std::bernoulli_distribution coin(0.3);
        for (int i = 0; i < n; ++i) {
            c[i] = coin(rng) ? 1 : 0;
            f[i] = u(rng) + 0.5 * c[i];
        }
        auto g = f;
        for (auto& v : g) v = std::exp(3.0 * v) - 7.0;
        CHECK(normalized_mi(g, c) == normalized_mi(f, c));
    }
    SUBCASE("single-class labels raise") {
        std::vector<double> f(200, 0.0);
        std::mt19937 r2(9);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (auto& v : f) v = u(r2);
        std::vector<int> c(200, 1);
        CHECK_THROWS_AS(normalized_mi(f, c), DataError);
    }
}

TEST_CASE("joint_normalized_mi") {
    std::mt19937 rng(11);
    const int n = 20000;
    std::vector<double> informative(n), noise(n);
    std::vector<int> c(n);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::bernoulli_distribution coin(0.5);
    for (int i = 0; i < n; ++i) {
        c[i] = coin(rng) ? 1 : 0;
        informative[i] = static_cast<double>(c[i]);
        noise[i] = u(rng);
    }

    SUBCASE("a duplicate feature adds nothing") {
        std::vector<double> partial(n);
        std::normal_distribution<double> g(0.0, 1.0);
        for (int i = 0; i < n; ++i) partial[i] = c[i] + g(rng);
        const double solo = normalized_mi(partial, c);
        const double joint = joint_normalized_mi(partial, partial, c);
        CHECK(joint == doctest::Approx(solo).epsilon(0.5 / std::max(solo, 1.0)));
    }
    SUBCASE("one perfect feature saturates the pair") {
        CHECK(joint_normalized_mi(informative, noise, c) >=
              doctest::Approx(100.0).epsilon(0.01));
    }
    SUBCASE("joint dominates each marginal") {
        std::vector<double> f1(n), f2(n);
        std::normal_distribution<double> g(0.0, 1.0);
        for (int i = 0; i < n; ++i) {
            f1[i] = c[i] + 2.0 * g(rng);
            f2[i] = c[i] - 1.5 * g(rng);
        }
        const double joint = joint_normalized_mi(f1, f2, c);
        CHECK(joint >= normalized_mi(f1, c) - 0.5);
        CHECK(joint >= normalized_mi(f2, c) - 0.5);
    }
}

TEST_CASE("MI estimates stay inside the information bounds") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::bernoulli_distribution coin(0.25);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 3000;
        std::vector<double> f(n);
        std::vector<int> c(n);
        for (int i = 0; i < n; ++i) {
            c[i] = coin(rng) ? 1 : 0;
            f[i] = u(rng) + 0.2 * c[i] * u(rng);
        }
        const double nmi = normalized_mi(f, c);
        CHECK(nmi >= 0.0);
        CHECK(nmi <= 100.0);
    }
}

TEST_CASE("mi_report covers all features and pairs") {
    FeatureMatrix m;
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const int label = i % 2;
        FeatureFrame f;
        for (int j = 0; j < kNumFeatures; ++j) f[j] = u(rng) + (j == 4 ? label : 0);
        m.frames.push_back(f);
        m.labels.push_back(label ? VoiceLabel::kPathological
                                 : VoiceLabel::kNormophonic);
        m.patient_ids.push_back(label ? "p0" : "n0");
    }
    auto report = mi_report(m, 20, /*pairs=*/true);
    CHECK(report.per_feature_nmi.size() == kNumFeatures);
    CHECK(report.pairwise_joint_nmi.size() == kNumFeatures * (kNumFeatures - 1) / 2);
    CHECK(report.label_entropy_bits == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(report.n_samples == 2000);
    // The feature built from the label dominates the ranking.
    const double best = report.per_feature_nmi.at("dCGD");
    for (const auto& [name, nmi] : report.per_feature_nmi)
        CHECK(nmi <= best + 1e-9);
    CHECK(best > 50.0);
    CHECK(format_mi_report_table(report).find("dCGD") != std::string::npos);
}
