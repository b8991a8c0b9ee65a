#pragma once

#include <cmath>
#include <vector>

#include "greenlaunch/agents/agent_config.hpp"
#include "greenlaunch/common/rng.hpp"
#include "greenlaunch/nn/mat.hpp"

namespace greenlaunch::agents {

using nn::Mat;

template <typename S>
void softmax_rows(const Mat<S>& logits, Mat<S>& probs) {
  probs.rows = logits.rows;
  probs.cols = logits.cols;
  probs.v.resize(logits.v.size());
  for (int r = 0; r < logits.rows; ++r) {
    const S* x = logits.row(r);
    S* p = probs.row(r);
    S mx = x[0];
    for (int c = 1; c < logits.cols; ++c) mx = std::max(mx, x[c]);
    S sum = S(0);
    for (int c = 0; c < logits.cols; ++c) {
      p[c] = std::exp(x[c] - mx);
      sum += p[c];
    }
    for (int c = 0; c < logits.cols; ++c) p[c] /= sum;
  }
}

template <typename S>
void log_softmax_rows(const Mat<S>& logits, Mat<S>& logp) {
  logp.rows = logits.rows;
  logp.cols = logits.cols;
  logp.v.resize(logits.v.size());
  for (int r = 0; r < logits.rows; ++r) {
    const S* x = logits.row(r);
    S* lp = logp.row(r);
    S mx = x[0];
    for (int c = 1; c < logits.cols; ++c) mx = std::max(mx, x[c]);
    S sum = S(0);
    for (int c = 0; c < logits.cols; ++c) sum += std::exp(x[c] - mx);
    const S log_sum = std::log(sum);
    for (int c = 0; c < logits.cols; ++c) lp[c] = x[c] - mx - log_sum;
  }
}

template <typename S>
S filter_value(FilterKind kind, S advantage, S beta = S(1), S w_max = S(20)) {
  switch (kind) {
    case FilterKind::uniform: return S(1);
    case FilterKind::binary: return advantage > S(0) ? S(1) : S(0);
    case FilterKind::exp: return std::min(std::exp(advantage / beta), w_max);
  }
  return S(1);
}

// A(s, a) = Q(s, a) minus a policy baseline: the exact expectation over
// actions when k == 0, otherwise the mean of Q at k policy samples.
template <typename S>
S estimate_advantage(const S* q, const S* probs, int n_actions, int action, int k, Rng* rng) {
  S baseline = S(0);
  if (k <= 0) {
    for (int a = 0; a < n_actions; ++a) baseline += probs[a] * q[a];
  } else {
    for (int j = 0; j < k; ++j) {
      const S u = static_cast<S>(rng->uniform());
      S cum = S(0);
      int drawn = n_actions - 1;
      for (int a = 0; a < n_actions; ++a) {
        cum += probs[a];
        if (u < cum) {
          drawn = a;
          break;
        }
      }
      baseline += q[drawn];
    }
    baseline /= static_cast<S>(k);
  }
  return q[action] - baseline;
}

template <typename S>
struct ActorLoss {
  S loss = S(0);
  Mat<S> dlogits;
};

// loss = -(1/B) * sum_i w_i * log pi(a_i | s_i)
template <typename S>
ActorLoss<S> offline_actor_loss(const Mat<S>& logits, const std::vector<int>& actions,
                                const std::vector<S>& weights) {
  if (static_cast<int>(actions.size()) != logits.rows || weights.size() != actions.size()) {
    throw ShapeError("offline_actor_loss: batch size mismatch");
  }
  const int B = logits.rows;
  const int A = logits.cols;
  Mat<S> probs;
  Mat<S> logp;
  softmax_rows(logits, probs);
  log_softmax_rows(logits, logp);
  ActorLoss<S> out;
  out.dlogits = Mat<S>(B, A);
  S acc = S(0);
  for (int i = 0; i < B; ++i) {
    acc += weights[i] * logp.at(i, actions[i]);
    const S scale = weights[i] / static_cast<S>(B);
    const S* p = probs.row(i);
    S* d = out.dlogits.row(i);
    for (int a = 0; a < A; ++a) d[a] = scale * p[a];
    d[actions[i]] = scale * (p[actions[i]] - S(1));
  }
  out.loss = -(acc / static_cast<S>(B));
  return out;
}

// Plain cross-entropy on the taken actions; written on its own so the
// uniform-filter path has an independently derived reference.
template <typename S>
ActorLoss<S> cross_entropy_loss(const Mat<S>& logits, const std::vector<int>& actions) {
  if (static_cast<int>(actions.size()) != logits.rows) {
    throw ShapeError("cross_entropy_loss: batch size mismatch");
  }
  const int B = logits.rows;
  const int A = logits.cols;
  Mat<S> probs;
  Mat<S> logp;
  softmax_rows(logits, probs);
  log_softmax_rows(logits, logp);
  ActorLoss<S> out;
  out.dlogits = Mat<S>(B, A);
  S acc = S(0);
  for (int i = 0; i < B; ++i) {
    acc += S(1) * logp.at(i, actions[i]);
    const S scale = S(1) / static_cast<S>(B);
    const S* p = probs.row(i);
    S* d = out.dlogits.row(i);
    for (int a = 0; a < A; ++a) d[a] = scale * p[a];
    d[actions[i]] = scale * (p[actions[i]] - S(1));
  }
  out.loss = -(acc / static_cast<S>(B));
  return out;
}

// loss = (1/B) * sum_i sum_a pi(a|s_i) * (alpha_ent * log pi(a|s_i) - q(s_i, a))
// with q detached; alpha_ent = 0 is the plain expected -Q objective.
template <typename S>
ActorLoss<S> online_actor_loss(const Mat<S>& logits, const Mat<S>& q_unnorm, S alpha_ent) {
  if (logits.rows != q_unnorm.rows || logits.cols != q_unnorm.cols) {
    throw ShapeError("online_actor_loss: logits and q shapes differ");
  }
  const int B = logits.rows;
  const int A = logits.cols;
  Mat<S> probs;
  Mat<S> logp;
  softmax_rows(logits, probs);
  log_softmax_rows(logits, logp);
  ActorLoss<S> out;
  out.dlogits = Mat<S>(B, A);
  S total = S(0);
  for (int i = 0; i < B; ++i) {
    const S* p = probs.row(i);
    const S* lp = logp.row(i);
    const S* q = q_unnorm.row(i);
    S* d = out.dlogits.row(i);
    S f = S(0);
    for (int a = 0; a < A; ++a) f += p[a] * (alpha_ent * lp[a] - q[a]);
    for (int a = 0; a < A; ++a) d[a] = p[a] * ((alpha_ent * lp[a] - q[a]) - f) / static_cast<S>(B);
    total += f;
  }
  out.loss = total / static_cast<S>(B);
  return out;
}

template <typename S>
struct CriticLoss {
  S loss = S(0);
  std::vector<Mat<S>> dq;
};

// Squared TD error against shared normalized targets, one term per ensemble
// member at the taken action.
template <typename S>
CriticLoss<S> critic_loss(const std::vector<const Mat<S>*>& q_norm, const std::vector<int>& actions,
                          const std::vector<S>& y_norm) {
  if (q_norm.empty()) throw ShapeError("critic_loss: empty ensemble");
  const int B = q_norm[0]->rows;
  if (static_cast<int>(actions.size()) != B || y_norm.size() != actions.size()) {
    throw ShapeError("critic_loss: batch size mismatch");
  }
  CriticLoss<S> out;
  for (const Mat<S>* q : q_norm) {
    Mat<S> d(q->rows, q->cols);
    for (int i = 0; i < B; ++i) {
      const S err = q->at(i, actions[i]) - y_norm[i];
      out.loss += err * err / static_cast<S>(B);
      d.at(i, actions[i]) = S(2) * err / static_cast<S>(B);
    }
    out.dq.push_back(std::move(d));
  }
  return out;
}

// Elementwise minimum across ensemble outputs.
template <typename S>
Mat<S> min_ensemble(const std::vector<const Mat<S>*>& qs) {
  if (qs.empty()) throw ShapeError("min_ensemble: empty ensemble");
  Mat<S> out = *qs[0];
  for (std::size_t e = 1; e < qs.size(); ++e) {
    if (qs[e]->rows != out.rows || qs[e]->cols != out.cols) {
      throw ShapeError("min_ensemble: shape mismatch");
    }
    for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] = std::min(out.v[i], qs[e]->v[i]);
  }
  return out;
}

}  // namespace greenlaunch::agents
