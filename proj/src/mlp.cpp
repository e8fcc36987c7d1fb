#include "als/mlp.hpp"

#include <algorithm>
#include <cmath>

#include "als/errors.hpp"

namespace als {

void TrainConfig::validate() const {
    if (epochs < 0) throw usage_error("epochs must be >= 0");
    if (learning_rate <= 0.0) throw usage_error("learning rate must be positive");
    if (momentum < 0.0 || momentum >= 1.0) throw usage_error("momentum must lie in [0, 1)");
    if (weight_decay < 0.0) throw usage_error("weight decay must be >= 0");
    if (scheduler_step <= 0) throw usage_error("scheduler step must be positive");
    if (scheduler_gamma <= 0.0) throw usage_error("scheduler gamma must be positive");
    if (batch_size <= 0) throw usage_error("batch size must be positive");
    if (n_drop < 1) throw usage_error("n_drop must be >= 1");
    if (hidden <= 0) throw usage_error("hidden width must be positive");
    if (dropout_rate < 0.0 || dropout_rate >= 1.0) throw usage_error("dropout must lie in [0, 1)");
}

namespace {

void fill_he_normal(Matrix& w, double fan_in, RngStream& rng) {
    const double sd = std::sqrt(2.0 / fan_in);
    double* data = w.data();
    const Eigen::Index n = w.size();
    for (Eigen::Index i = 0; i < n; ++i) data[i] = sd * rng.normal();
}

Matrix gather_rows(const DatasetTable& dataset, const IndexSet& indices) {
    Matrix x(static_cast<Eigen::Index>(indices.size()), dataset.dim());
    for (std::size_t r = 0; r < indices.size(); ++r) {
        x.row(static_cast<Eigen::Index>(r)) = dataset.features.row(indices[r]);
    }
    return x;
}

// Inverted-dropout mask: kept units scaled by 1/(1-p); rate 0 is the identity.
// Draw order is row-major over (rows, hidden).
Matrix dropout_mask(Eigen::Index rows, Eigen::Index hidden, double rate, RngStream& rng) {
    Matrix mask(rows, hidden);
    if (rate <= 0.0) {
        mask.setOnes();
        return mask;
    }
    const double scale = 1.0 / (1.0 - rate);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index h = 0; h < hidden; ++h) {
            mask(r, h) = rng.bernoulli(1.0 - rate) ? scale : 0.0;
        }
    }
    return mask;
}

} // namespace

Matrix softmax_rows(const Matrix& logits) {
    Matrix probs(logits.rows(), logits.cols());
    for (Eigen::Index r = 0; r < logits.rows(); ++r) {
        const double m = logits.row(r).maxCoeff();
        double total = 0.0;
        for (Eigen::Index c = 0; c < logits.cols(); ++c) {
            const double e = std::exp(logits(r, c) - m);
            probs(r, c) = e;
            total += e;
        }
        for (Eigen::Index c = 0; c < logits.cols(); ++c) probs(r, c) /= total;
    }
    return probs;
}

Matrix penultimate(const MlpModel& model, const Matrix& inputs) {
    return ((inputs * model.w1).rowwise() + model.b1.transpose()).cwiseMax(0.0);
}

Matrix output_logits(const MlpModel& model, const Matrix& inputs) {
    return (penultimate(model, inputs) * model.w2).rowwise() + model.b2.transpose();
}

int argmax_row(const RowVector& row) {
    int best = 0;
    for (int c = 1; c < row.size(); ++c) {
        if (row(c) > row(best)) best = c;
    }
    return best;
}

MlpModel init_model(int input_dim, int hidden_dim, int class_count, double dropout_rate,
                    RngStream& rng) {
    MlpModel model;
    model.w1.resize(input_dim, hidden_dim);
    model.w2.resize(hidden_dim, class_count);
    fill_he_normal(model.w1, input_dim, rng);
    fill_he_normal(model.w2, hidden_dim, rng);
    model.b1 = Vector::Zero(hidden_dim);
    model.b2 = Vector::Zero(class_count);
    model.dropout_rate = dropout_rate;
    return model;
}

MlpModel train(const DatasetTable& dataset, const IndexSet& labeled, const TrainConfig& cfg,
               RngStream& rng, std::vector<double>* epoch_loss) {
    cfg.validate();
    if (labeled.empty()) {
        throw usage_error("train: labeled set is empty");
    }
    for (int idx : labeled) {
        if (dataset.is_ood(idx)) {
            throw data_error("train: labeled set contains OOD sample " + std::to_string(idx));
        }
    }

    MlpModel model = init_model(dataset.dim(), cfg.hidden, dataset.class_count,
                                cfg.dropout_rate, rng);
    if (epoch_loss) epoch_loss->clear();
    if (cfg.epochs == 0) return model;

    const int n = static_cast<int>(labeled.size());
    Matrix x_all = gather_rows(dataset, labeled);
    std::vector<int> y_all(labeled.size());
    for (std::size_t i = 0; i < labeled.size(); ++i) y_all[i] = dataset.labels(labeled[i]);

    Matrix vw1 = Matrix::Zero(model.w1.rows(), model.w1.cols());
    Vector vb1 = Vector::Zero(model.b1.size());
    Matrix vw2 = Matrix::Zero(model.w2.rows(), model.w2.cols());
    Vector vb2 = Vector::Zero(model.b2.size());

    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        const double lr = cfg.learning_rate *
                          std::pow(cfg.scheduler_gamma, epoch / cfg.scheduler_step);
        rng.shuffle(order);
        double loss_sum = 0.0;

        for (int start = 0; start < n; start += cfg.batch_size) {
            const int b = std::min(cfg.batch_size, n - start);
            Matrix xb(b, dataset.dim());
            for (int i = 0; i < b; ++i) {
                xb.row(i) = x_all.row(order[static_cast<std::size_t>(start + i)]);
            }

            Matrix z1 = (xb * model.w1).rowwise() + model.b1.transpose();
            Matrix a1 = z1.cwiseMax(0.0);
            Matrix mask = dropout_mask(b, cfg.hidden, cfg.dropout_rate, rng);
            Matrix a1d = a1.cwiseProduct(mask);
            Matrix logits = (a1d * model.w2).rowwise() + model.b2.transpose();
            Matrix probs = softmax_rows(logits);

            Matrix dlogits = probs;
            for (int i = 0; i < b; ++i) {
                const int y = y_all[static_cast<std::size_t>(order[static_cast<std::size_t>(start + i)])];
                loss_sum -= std::log(std::max(probs(i, y), 1e-300));
                dlogits(i, y) -= 1.0;
            }
            dlogits /= static_cast<double>(b);

            Matrix gw2 = a1d.transpose() * dlogits + cfg.weight_decay * model.w2;
            Vector gb2 = dlogits.colwise().sum().transpose();
            Matrix da1 = (dlogits * model.w2.transpose()).cwiseProduct(mask);
            Matrix dz1 = da1.cwiseProduct((z1.array() > 0.0).cast<double>().matrix());
            Matrix gw1 = xb.transpose() * dz1 + cfg.weight_decay * model.w1;
            Vector gb1 = dz1.colwise().sum().transpose();

            vw1 = cfg.momentum * vw1 + gw1;
            vb1 = cfg.momentum * vb1 + gb1;
            vw2 = cfg.momentum * vw2 + gw2;
            vb2 = cfg.momentum * vb2 + gb2;
            model.w1 -= lr * vw1;
            model.b1 -= lr * vb1;
            model.w2 -= lr * vw2;
            model.b2 -= lr * vb2;
        }
        if (epoch_loss) epoch_loss->push_back(loss_sum / n);
    }
    return model;
}

InferenceBundle infer(const MlpModel& model, const DatasetTable& dataset,
                      const IndexSet& indices, int n_drop, RngStream& rng) {
    if (n_drop < 1) throw usage_error("infer: n_drop must be >= 1");
    InferenceBundle bundle;
    const Eigen::Index u = static_cast<Eigen::Index>(indices.size());
    const int h = model.hidden_dim();
    const int c = model.class_count();
    if (u == 0) {
        bundle.probs.resize(0, c);
        bundle.embeddings.resize(0, h);
        bundle.mc_probs.assign(static_cast<std::size_t>(n_drop), Matrix(0, c));
        return bundle;
    }

    Matrix x = gather_rows(dataset, indices);
    bundle.embeddings = penultimate(model, x);
    bundle.probs = softmax_rows((bundle.embeddings * model.w2).rowwise() + model.b2.transpose());
    bundle.mc_probs.reserve(static_cast<std::size_t>(n_drop));
    for (int t = 0; t < n_drop; ++t) {
        Matrix mask = dropout_mask(u, h, model.dropout_rate, rng);
        Matrix masked = bundle.embeddings.cwiseProduct(mask);
        bundle.mc_probs.push_back(
            softmax_rows((masked * model.w2).rowwise() + model.b2.transpose()));
    }
    return bundle;
}

Matrix grad_embedding(const MlpModel& model, const InferenceBundle& bundle) {
    const Eigen::Index n = bundle.probs.rows();
    const Eigen::Index c = bundle.probs.cols();
    const Eigen::Index h = bundle.embeddings.cols();
    Matrix grads(n, c * h);
    for (Eigen::Index i = 0; i < n; ++i) {
        const int pseudo = argmax_row(bundle.probs.row(i));
        for (Eigen::Index cls = 0; cls < c; ++cls) {
            const double coeff = bundle.probs(i, cls) - (cls == pseudo ? 1.0 : 0.0);
            for (Eigen::Index j = 0; j < h; ++j) {
                grads(i, cls * h + j) = coeff * bundle.embeddings(i, j);
            }
        }
    }
    (void)model;
    return grads;
}

namespace {

// Adds sd * N(0,1) elementwise in storage order; sd scales with the tensor RMS.
template <typename Tensor>
void perturb_tensor(Tensor& t, double noise_scale, RngStream& rng) {
    const double rms = std::sqrt(t.squaredNorm() / static_cast<double>(t.size()));
    const double sd = noise_scale * rms;
    double* data = t.data();
    for (Eigen::Index i = 0; i < t.size(); ++i) data[i] += sd * rng.normal();
}

struct WeightSnapshot {
    Matrix w1;
    Vector b1;
    Matrix w2;
    Vector b2;

    explicit WeightSnapshot(const MlpModel& m) : w1(m.w1), b1(m.b1), w2(m.w2), b2(m.b2) {}
    void restore(MlpModel& m) const {
        m.w1 = w1;
        m.b1 = b1;
        m.w2 = w2;
        m.b2 = b2;
    }
};

} // namespace

ProbStack perturbed_outputs(MlpModel& model, const DatasetTable& dataset,
                            const IndexSet& indices, double noise_scale, int draws,
                            RngStream& rng) {
    if (noise_scale < 0.0) throw usage_error("perturbed_outputs: noise_scale must be >= 0");
    if (draws < 1) throw usage_error("perturbed_outputs: draws must be >= 1");

    Matrix x = gather_rows(dataset, indices);
    const WeightSnapshot saved(model);
    ProbStack stack;
    stack.reserve(static_cast<std::size_t>(draws));
    for (int d = 0; d < draws; ++d) {
        perturb_tensor(model.w1, noise_scale, rng);
        perturb_tensor(model.b1, noise_scale, rng);
        perturb_tensor(model.w2, noise_scale, rng);
        perturb_tensor(model.b2, noise_scale, rng);
        stack.push_back(softmax_rows(output_logits(model, x)));
        saved.restore(model);
    }
    return stack;
}

namespace {

struct SampleGrad {
    Matrix gw1;
    Vector gb1;
    Matrix gw2;
    Vector gb2;

    double squared_norm() const {
        return gw1.squaredNorm() + gb1.squaredNorm() + gw2.squaredNorm() + gb2.squaredNorm();
    }
};

// Full-parameter cross-entropy gradient for one sample under label y.
SampleGrad sample_gradient(const MlpModel& model, const RowVector& x, int y) {
    RowVector z1 = x * model.w1 + model.b1.transpose();
    RowVector h = z1.cwiseMax(0.0);
    RowVector logits = h * model.w2 + model.b2.transpose();
    Matrix p = softmax_rows(logits);

    RowVector dlogits = p.row(0);
    dlogits(y) -= 1.0;

    SampleGrad g;
    g.gw2 = h.transpose() * dlogits;
    g.gb2 = dlogits.transpose();
    RowVector dh = dlogits * model.w2.transpose();
    RowVector dz1 = dh.cwiseProduct((z1.array() > 0.0).cast<double>().matrix());
    g.gw1 = x.transpose() * dz1;
    g.gb1 = dz1.transpose();
    return g;
}

double sample_loss(const MlpModel& model, const RowVector& x, int y) {
    RowVector logits = (x * model.w1 + model.b1.transpose()).cwiseMax(0.0) * model.w2 +
                       model.b2.transpose();
    Matrix p = softmax_rows(logits);
    return -std::log(std::max(p(0, y), 1e-300));
}

} // namespace

Vector ascent_perturbed_loss(MlpModel& model, const DatasetTable& dataset,
                             const IndexSet& indices, double rho) {
    if (rho < 0.0) throw usage_error("ascent_perturbed_loss: rho must be >= 0");

    Vector losses(static_cast<Eigen::Index>(indices.size()));
    const WeightSnapshot saved(model);
    for (std::size_t i = 0; i < indices.size(); ++i) {
        const RowVector x = dataset.features.row(indices[i]);
        Matrix p = softmax_rows(output_logits(model, x));
        const int pseudo = argmax_row(p.row(0));
        const double base_loss = -std::log(std::max(p(0, pseudo), 1e-300));

        if (rho == 0.0) {
            losses(static_cast<Eigen::Index>(i)) = base_loss;
            continue;
        }
        SampleGrad g = sample_gradient(model, x, pseudo);
        const double norm = std::sqrt(g.squared_norm());
        if (norm == 0.0) {
            losses(static_cast<Eigen::Index>(i)) = base_loss;
            continue;
        }
        const double scale = rho / norm;
        model.w1 += scale * g.gw1;
        model.b1 += scale * g.gb1;
        model.w2 += scale * g.gw2;
        model.b2 += scale * g.gb2;
        losses(static_cast<Eigen::Index>(i)) = sample_loss(model, x, pseudo);
        saved.restore(model);
    }
    return losses;
}

Vector pseudo_label_loss(const MlpModel& model, const DatasetTable& dataset,
                         const IndexSet& indices) {
    Vector losses(static_cast<Eigen::Index>(indices.size()));
    for (std::size_t i = 0; i < indices.size(); ++i) {
        const RowVector x = dataset.features.row(indices[i]);
        Matrix p = softmax_rows(output_logits(model, x));
        const int pseudo = argmax_row(p.row(0));
        losses(static_cast<Eigen::Index>(i)) = -std::log(std::max(p(0, pseudo), 1e-300));
    }
    return losses;
}

} // namespace als
