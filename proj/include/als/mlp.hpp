#pragma once

#include <vector>

#include "als/dataset.hpp"
#include "als/rng.hpp"
#include "als/types.hpp"

namespace als {

/// One-hidden-layer classifier: input D -> ReLU hidden H -> softmax over C.
/// Dropout acts on the hidden activations, directly before the output layer.
/// Deterministic-mode forward passes are pure functions of (weights, input).
struct MlpModel {
    Matrix w1; // D x H
    Vector b1; // H
    Matrix w2; // H x C
    Vector b2; // C
    double dropout_rate = 0.5;

    int input_dim() const { return static_cast<int>(w1.rows()); }
    int hidden_dim() const { return static_cast<int>(w1.cols()); }
    int class_count() const { return static_cast<int>(w2.cols()); }
};

struct TrainConfig {
    int epochs = 200;
    double learning_rate = 0.1;
    double momentum = 0.9;
    double weight_decay = 5e-4;
    int scheduler_step = 50;     // StepLR: lr *= scheduler_gamma every scheduler_step epochs
    double scheduler_gamma = 0.5;
    int batch_size = 32;
    int n_drop = 5;              // MC-dropout passes
    int hidden = 128;
    double dropout_rate = 0.5;

    void validate() const;
};

/// Per-sample inference products consumed by the acquisition strategies.
struct InferenceBundle {
    Matrix probs;       // N x C, dropout disabled
    ProbStack mc_probs; // n_drop slices, each N x C, dropout enabled
    Matrix embeddings;  // N x H penultimate activations, dropout disabled

    int size() const { return static_cast<int>(probs.rows()); }
};

/// He-normal initialized model with zero biases; draw order is fixed so equal
/// streams give bit-identical models.
MlpModel init_model(int input_dim, int hidden_dim, int class_count, double dropout_rate,
                    RngStream& rng);

/// Trains from fresh initialization with minibatch SGD + momentum, L2 weight
/// decay, and a StepLR schedule. Deterministic given the stream. epochs == 0
/// returns the freshly initialized model unchanged. Optionally records the
/// mean training loss per epoch.
MlpModel train(const DatasetTable& dataset, const IndexSet& labeled, const TrainConfig& cfg,
               RngStream& rng, std::vector<double>* epoch_loss = nullptr);

/// Deterministic probabilities, n_drop stochastic dropout passes, and
/// penultimate embeddings for the given rows. Empty indices produce an empty
/// bundle (still carrying n_drop empty slices).
InferenceBundle infer(const MlpModel& model, const DatasetTable& dataset,
                      const IndexSet& indices, int n_drop, RngStream& rng);

/// Row-stable softmax; each output row sums to 1.
Matrix softmax_rows(const Matrix& logits);

/// ReLU hidden activations for the given rows (dropout disabled).
Matrix penultimate(const MlpModel& model, const Matrix& inputs);

/// Pre-softmax output activations for the given rows (dropout disabled).
Matrix output_logits(const MlpModel& model, const Matrix& inputs);

/// argmax with ties broken toward the lowest class index.
int argmax_row(const RowVector& row);

/// Last-layer cross-entropy gradient under the pseudo-label, flattened
/// class-major: g[c*H + j] = (p_c - [c == argmax p]) * h_j. One row per
/// bundle row.
Matrix grad_embedding(const MlpModel& model, const InferenceBundle& bundle);

/// For each draw, perturbs every parameter tensor with zero-mean Gaussian
/// noise of standard deviation noise_scale * (that tensor's RMS), runs a
/// deterministic forward pass over the rows, and restores the weights.
ProbStack perturbed_outputs(MlpModel& model, const DatasetTable& dataset,
                            const IndexSet& indices, double noise_scale, int draws,
                            RngStream& rng);

/// Per-sample cross-entropy loss under the pseudo-label, evaluated after a
/// single normalized gradient-ascent step of radius rho on that sample's
/// loss. Zero gradient (or rho == 0) skips the step and reports the
/// unperturbed loss. Weights are restored after every sample.
Vector ascent_perturbed_loss(MlpModel& model, const DatasetTable& dataset,
                             const IndexSet& indices, double rho);

/// Unperturbed pseudo-label loss (ascent_perturbed_loss at rho == 0).
Vector pseudo_label_loss(const MlpModel& model, const DatasetTable& dataset,
                         const IndexSet& indices);

} // namespace als
