#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <utility>

#include "ivstream/errors.hpp"

namespace ivstream {

/// Symmetric positive-definite accumulator M = ridge*I + sum_s v_s v_s^T with
/// a maintained inverse and log-determinant. Rank-one updates keep the
/// inverse via Sherman-Morrison in O(dim^2); a direct re-factorization runs
/// every kRefreshInterval updates to bound floating-point drift. Plain value
/// type: movable, copyable, never internally synchronized.
class PosDefState {
 public:
  static constexpr int kRefreshInterval = 512;

  PosDefState(Eigen::Index dim, double ridge) : dim_(dim), ridge_(ridge) {
    if (dim < 1) throw std::invalid_argument("PosDefState: dim must be >= 1");
    if (!(ridge > 0.0)) throw std::invalid_argument("PosDefState: ridge must be > 0");
    m_ = Eigen::MatrixXd::Identity(dim, dim) * ridge;
    m_inv_ = Eigen::MatrixXd::Identity(dim, dim) / ridge;
    logdet_ = static_cast<double>(dim) * std::log(ridge);
    updates_since_refresh_ = 0;
  }

  /// Builds the state around an existing positive semi-definite matrix:
  /// M = psd + ridge*I, factorized directly.
  static PosDefState from_matrix(const Eigen::MatrixXd& psd, double ridge) {
    if (psd.rows() != psd.cols()) throw std::invalid_argument("PosDefState: matrix must be square");
    PosDefState state(psd.rows(), ridge);
    state.m_ = psd + Eigen::MatrixXd::Identity(psd.rows(), psd.cols()) * ridge;
    state.m_ = 0.5 * (state.m_ + state.m_.transpose().eval());
    state.refresh();
    return state;
  }

  Eigen::Index dim() const { return dim_; }
  double ridge() const { return ridge_; }
  const Eigen::MatrixXd& matrix() const { return m_; }
  const Eigen::MatrixXd& inverse() const { return m_inv_; }
  double logdet() const { return logdet_; }
  int updates_since_refresh() const { return updates_since_refresh_; }

  /// M <- M + v v^T. The inverse follows by Sherman-Morrison and the
  /// log-determinant by log(1 + v^T M^-1 v); both are exact identities.
  void rank_one_update(const Eigen::Ref<const Eigen::VectorXd>& v) {
    if (v.size() != dim_) {
      throw std::invalid_argument("PosDefState::rank_one_update: vector has size " +
                                  std::to_string(v.size()) + ", expected " + std::to_string(dim_));
    }
    const Eigen::VectorXd w = m_inv_ * v;
    const double s = v.dot(w);
    m_.selfadjointView<Eigen::Lower>().rankUpdate(v, 1.0);
    m_ = m_.selfadjointView<Eigen::Lower>();
    m_inv_.noalias() -= (w * w.transpose()) / (1.0 + s);
    m_inv_ = 0.5 * (m_inv_ + m_inv_.transpose().eval());
    logdet_ += std::log1p(s);
    if (++updates_since_refresh_ >= kRefreshInterval) refresh();
  }

  /// sqrt(x^T M x), or sqrt(x^T M^-1 x) when use_inverse is set.
  double quad_norm(const Eigen::Ref<const Eigen::VectorXd>& x, bool use_inverse = false) const {
    if (x.size() != dim_) {
      throw std::invalid_argument("PosDefState::quad_norm: vector has size " +
                                  std::to_string(x.size()) + ", expected " + std::to_string(dim_));
    }
    const double q = use_inverse ? x.dot(m_inv_ * x) : x.dot(m_ * x);
    return std::sqrt(std::max(q, 0.0));
  }

  /// Solves M u = rhs through the maintained inverse plus one step of
  /// iterative refinement.
  Eigen::VectorXd solve(const Eigen::Ref<const Eigen::VectorXd>& rhs) const {
    if (rhs.size() != dim_) {
      throw std::invalid_argument("PosDefState::solve: vector has size " +
                                  std::to_string(rhs.size()) + ", expected " + std::to_string(dim_));
    }
    Eigen::VectorXd u = m_inv_ * rhs;
    const Eigen::VectorXd residual = rhs - m_ * u;
    u.noalias() += m_inv_ * residual;
    return u;
  }

  /// Direct re-inversion of M. Leaves M untouched; only m_inv_ and logdet_
  /// are recomputed. A failed factorization gets one shot at a tiny diagonal
  /// bump before raising.
  void refresh() {
    Eigen::LLT<Eigen::MatrixXd> llt(m_);
    if (llt.info() != Eigen::Success) {
      const double bump = 1e-12 * m_.trace() / static_cast<double>(dim_);
      m_ += Eigen::MatrixXd::Identity(dim_, dim_) * bump;
      llt.compute(m_);
      if (llt.info() != Eigen::Success) {
        throw NumericalError("PosDefState::refresh: Cholesky failed twice; trace=" +
                             std::to_string(m_.trace()) + " dim=" + std::to_string(dim_));
      }
    }
    m_inv_ = llt.solve(Eigen::MatrixXd::Identity(dim_, dim_));
    m_inv_ = 0.5 * (m_inv_ + m_inv_.transpose().eval());
    logdet_ = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    updates_since_refresh_ = 0;
  }

 private:
  Eigen::Index dim_;
  double ridge_;
  Eigen::MatrixXd m_;
  Eigen::MatrixXd m_inv_;
  double logdet_;
  int updates_since_refresh_;
};

}  // namespace ivstream
