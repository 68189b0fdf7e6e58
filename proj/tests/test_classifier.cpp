#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>
#include <vector>

#include "oracles.h"
#include "phasevox/crossval.h"
#include "phasevox/errors.h"
#include "phasevox/mlp.h"

using namespace phasevox;

namespace {

struct Blobs {
    std::vector<std::vector<double>> x;
    std::vector<int> y;
};

// Two Gaussian blobs separated by a 2-sigma margin.
Blobs separable_blobs(int n, unsigned seed) {
    Blobs b;
    std::mt19937 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int i = 0; i < n; ++i) {
        const int label = i % 2;
        const double cx = label ? 4.0 : -4.0;
        b.x.push_back({cx + g(rng), cx + g(rng)});
        b.y.push_back(label);
    }
    return b;
}

Blobs xor_data(int replicas, unsigned seed) {
    Blobs b;
    std::mt19937 rng(seed);
    std::normal_distribution<double> g(0.0, 0.05);
    const double corners[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    const int labels[4] = {0, 1, 1, 0};
    for (int r = 0; r < replicas; ++r)
        for (int c = 0; c < 4; ++c) {
            b.x.push_back({corners[c][0] + g(rng), corners[c][1] + g(rng)});
            b.y.push_back(labels[c]);
        }
    return b;
}

double train_error(const MlpModel& m, const Blobs& b) {
    int wrong = 0;
    for (size_t i = 0; i < b.x.size(); ++i) {
        const int pred = predict_frame(m, b.x[i]) >= 0.5 ? 1 : 0;
        if (pred != b.y[i]) ++wrong;
    }
    return 100.0 * wrong / b.x.size();
}

// Patients with n_frames rows each; feature 0 copies the label when
// informative is set, everything else is seeded noise.
FeatureMatrix synthetic_patients(int per_class, int n_frames, bool informative,
                                 unsigned seed) {
    FeatureMatrix m;
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int p = 0; p < 2 * per_class; ++p) {
        const int label = p % 2;
        const std::string pid = (label ? "p" : "n") + std::to_string(p / 2);
        for (int t = 0; t < n_frames; ++t) {
            FeatureFrame f;
            for (auto& v : f) v = u(rng);
            if (informative) f[0] = label + 0.1 * u(rng);
            m.frames.push_back(f);
            m.labels.push_back(label ? VoiceLabel::kPathological
                                     : VoiceLabel::kNormophonic);
            m.patient_ids.push_back(pid);
        }
    }
    return m;
}

}  // namespace

TEST_CASE("analytic gradients match central finite differences") {
    std::mt19937 rng(3);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<std::vector<double>> x;
    std::vector<int> y;
    for (int i = 0; i < 24; ++i) {
        x.push_back({g(rng), g(rng), g(rng)});
        y.push_back(i % 2);
    }

    for (double l2 : {0.0, 0.01}) {
        MlpModel m;
        m.n_inputs = 3;
        m.n_hidden = 4;
        m.w1.resize(12);
        m.b1.resize(4);
        m.w2.resize(4);
        for (auto* vec : {&m.w1, &m.b1, &m.w2})
            for (auto& v : *vec) v = 0.3 * g(rng);
        m.b2 = 0.3 * g(rng);
        m.input_mean.assign(3, 0.0);
        m.input_std.assign(3, 1.0);

        auto grad = loss_gradient(m, x, y, l2);
        auto flat = flatten_weights(m);
        REQUIRE(grad.size() == flat.size());
        const double h = 1e-5;
        for (size_t j = 0; j < flat.size(); ++j) {
            auto plus = flat, minus = flat;
            plus[j] += h;
            minus[j] -= h;
            MlpModel mp = m, mm = m;
            unflatten_weights(mp, plus);
            unflatten_weights(mm, minus);
            const double fd = (loss_value(mp, x, y, l2) - loss_value(mm, x, y, l2)) /
                              (2.0 * h);
            CHECK(std::abs(grad[j] - fd) <
                  1e-4 * std::max(1.0, std::abs(fd)));
        }
    }
}

TEST_CASE("train_mlp") {
    SUBCASE("separable blobs reach zero training error") {
        auto b = separable_blobs(400, 5);
        auto m = train_mlp(b.x, b.y, TrainConfig{});
        CHECK(train_error(m, b) == 0.0);

        SUBCASE("a point deep inside class 1 scores high") {
            CHECK(predict_frame(m, {4.0, 4.0}) > 0.9);
            CHECK(predict_frame(m, {-4.0, -4.0}) < 0.1);
        }
    }
    SUBCASE("XOR is learned with more epochs") {
        auto b = xor_data(100, 6);
        TrainConfig cfg;
        cfg.epochs = 2000;
        cfg.learning_rate = 0.5;
        auto m = train_mlp(b.x, b.y, cfg);
        CHECK(train_error(m, b) < 5.0);
    }
    SUBCASE("same seed gives bit-identical weights") {
        auto b = separable_blobs(200, 7);
        TrainConfig cfg;
        cfg.epochs = 30;
        auto m1 = train_mlp(b.x, b.y, cfg);
        auto m2 = train_mlp(b.x, b.y, cfg);
        CHECK(m1.w1 == m2.w1);
        CHECK(m1.b1 == m2.b1);
        CHECK(m1.w2 == m2.w2);
        CHECK(m1.b2 == m2.b2);
    }
    SUBCASE("a single class is rejected") {
        auto b = separable_blobs(100, 8);
        std::fill(b.y.begin(), b.y.end(), 1);
        CHECK_THROWS_AS(train_mlp(b.x, b.y, TrainConfig{}), DataError);
    }
}

TEST_CASE("predict_frame contracts") {
    MlpModel m;
    m.n_inputs = 2;
    m.n_hidden = 3;
    m.w1.assign(6, 0.0);
    m.b1.assign(3, 0.0);
    m.w2.assign(3, 0.0);
    m.b2 = 0.0;
    m.input_mean.assign(2, 0.0);
    m.input_std.assign(2, 1.0);

    SUBCASE("zero weights give exactly one half") {
        CHECK(predict_frame(m, {0.7, -1.3}) == 0.5);
    }
    SUBCASE("arity mismatch raises") {
        CHECK_THROWS_AS(predict_frame(m, {1.0}), UsageError);
    }
    SUBCASE("NaN input raises") {
        CHECK_THROWS_AS(predict_frame(m, {std::nan(""), 0.0}), UsageError);
    }
}

TEST_CASE("classify_patient") {
    CHECK(classify_patient({0.9, 0.8, 0.2}) == VoiceLabel::kPathological);
    CHECK(classify_patient({0.1, 0.2, 0.3}) == VoiceLabel::kNormophonic);
    CHECK(classify_patient({0.9, 0.1}) == VoiceLabel::kPathological);  // tie
    CHECK_THROWS_AS(classify_patient({}), DataError);

    SUBCASE("raising the threshold never flips toward pathological") {
        std::mt19937 rng(9);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> post(11);
            for (auto& v : post) v = u(rng);
            bool was_patho = true;
            for (double thr : {0.1, 0.3, 0.5, 0.7, 0.9}) {
                const bool patho =
                    classify_patient(post, thr) == VoiceLabel::kPathological;
                if (!was_patho) CHECK_FALSE(patho);
                was_patho = patho;
            }
        }
    }
}

TEST_CASE("cross_validate") {
    TrainConfig cfg;
    cfg.epochs = 50;

    SUBCASE("an oracle feature yields zero error") {
        auto m = synthetic_patients(15, 40, true, 11);
        auto report = cross_validate(m, {"dFM"}, 10, cfg);
        CHECK(report.frame_error_pct == 0.0);
        CHECK(report.patient_error_pct == 0.0);
        CHECK(report.false_positive_pct == 0.0);
        CHECK(report.false_negative_pct == 0.0);
        int patients = 0;
        for (const auto& f : report.folds) patients += f.n_patients;
        CHECK(patients == 30);
    }
    SUBCASE("pure noise sits at chance level") {
        auto m = synthetic_patients(20, 40, false, 12);
        auto report = cross_validate(m, {"dFM", "dSMOOTH"}, 10, cfg);
        CHECK(report.patient_error_pct > 20.0);
        CHECK(report.patient_error_pct < 80.0);
    }
    SUBCASE("identical configs reproduce the report bit-for-bit") {
        auto m = synthetic_patients(12, 25, true, 13);
        cfg.epochs = 20;
        auto r1 = cross_validate(m, {"dFM", "T1"}, 5, cfg);
        auto r2 = cross_validate(m, {"dFM", "T1"}, 5, cfg);
        CHECK(r1.frame_error_pct == r2.frame_error_pct);
        CHECK(r1.patient_error_pct == r2.patient_error_pct);
        CHECK(r1.posteriors == r2.posteriors);
    }
    SUBCASE("fewer patients than folds raises") {
        auto m = synthetic_patients(4, 10, true, 14);
        CHECK_THROWS_AS(cross_validate(m, {"dFM"}, 10, cfg), DataError);
    }
}

TEST_CASE("roc_curve and roc_auc") {
    SUBCASE("perfect posteriors pass through (0, 1)") {
        std::vector<double> post;
        std::vector<int> labels;
        for (int i = 0; i < 100; ++i) {
            labels.push_back(i % 2);
            post.push_back(i % 2 ? 1.0 : 0.0);
        }
        auto curve = roc_curve(post, labels);
        bool hits_corner = false;
        for (const auto& p : curve)
            if (p.fpr == 0.0 && p.tpr == 1.0) hits_corner = true;
        CHECK(hits_corner);
        CHECK(roc_auc(curve) == doctest::Approx(1.0).epsilon(1e-9));
        // Endpoints present.
        bool has00 = false, has11 = false;
        for (const auto& p : curve) {
            if (p.fpr == 0.0 && p.tpr == 0.0) has00 = true;
            if (p.fpr == 1.0 && p.tpr == 1.0) has11 = true;
        }
        CHECK(has00);
        CHECK(has11);
    }
    SUBCASE("constant posteriors degenerate to the diagonal endpoints") {
        std::vector<double> post(50, 0.5);
        std::vector<int> labels;
        for (int i = 0; i < 50; ++i) labels.push_back(i % 2);
        auto curve = roc_curve(post, labels);
        for (const auto& p : curve) CHECK(p.tpr == p.fpr);
        CHECK(roc_auc(curve) == doctest::Approx(0.5).epsilon(1e-9));
    }
    SUBCASE("random posteriors score one half") {
        std::mt19937 rng(15);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<double> post(10000);
        std::vector<int> labels(10000);
        for (int i = 0; i < 10000; ++i) {
            post[i] = u(rng);
            labels[i] = i % 2;
        }
        auto curve = roc_curve(post, labels);
        CHECK(roc_auc(curve) == doctest::Approx(0.5).epsilon(0.02 / 0.5));
    }
    SUBCASE("monotone sweep") {
        std::mt19937 rng(16);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<double> post(500);
        std::vector<int> labels(500);
        for (int i = 0; i < 500; ++i) {
            post[i] = u(rng);
            labels[i] = u(rng) < 0.3 ? 1 : 0;
        }
        auto curve = roc_curve(post, labels);
        // The sweep runs from low to high threshold, so rates fall
        // monotonically from (1,1) to (0,0).
        for (size_t i = 1; i < curve.size(); ++i) {
            CHECK(curve[i].tpr <= curve[i - 1].tpr + 1e-12);
            CHECK(curve[i].fpr <= curve[i - 1].fpr + 1e-12);
        }
    }
    SUBCASE("single class raises") {
        std::vector<double> post(10, 0.5);
        std::vector<int> labels(10, 1);
        CHECK_THROWS_AS(roc_curve(post, labels), DataError);
    }
}

TEST_CASE("model JSON round-trips") {
    auto b = separable_blobs(100, 17);
    TrainConfig cfg;
    cfg.epochs = 20;
    auto m = train_mlp(b.x, b.y, cfg);
    m.feature_names = {"dFM", "T1"};
    m.config_hash = "0123456789abcdef";
    const auto path =
        (std::filesystem::temp_directory_path() / "pv_model.json").string();
    write_model_json(path, m);
    auto back = read_model_json(path);
    CHECK(back.n_inputs == m.n_inputs);
    CHECK(back.n_hidden == m.n_hidden);
    CHECK(back.w1 == m.w1);
    CHECK(back.b1 == m.b1);
    CHECK(back.w2 == m.w2);
    CHECK(back.b2 == m.b2);
    CHECK(back.input_mean == m.input_mean);
    CHECK(back.input_std == m.input_std);
    CHECK(back.feature_names == m.feature_names);
    CHECK(back.config_hash == m.config_hash);
}
