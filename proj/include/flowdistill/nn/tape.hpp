#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <vector>

namespace flowdistill::nn {

/// Row-major so that one sample (one row) is contiguous.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;

class Tape;

/// Handle to a node recorded on a Tape. Cheap to copy; only valid while the tape lives.
class Var {
 public:
  Var() = default;

  const Matrix& value() const;
  Eigen::Index rows() const { return value().rows(); }
  Eigen::Index cols() const { return value().cols(); }
  bool requires_grad() const;
  Tape& tape() const { return *tape_; }
  int id() const { return id_; }
  bool valid() const { return tape_ != nullptr; }

 private:
  friend class Tape;
  Var(Tape* tape, int id) : tape_(tape), id_(id) {}

  Tape* tape_ = nullptr;
  int id_ = -1;
};

/// Append-only record of matrix-valued operations. Nodes are stored in creation order,
/// which is already a topological order, so backward() is a single reverse sweep.
class Tape {
 public:
  /// Called with the node's own id once its gradient is final.
  using BackwardFn = std::function<void(Tape&, int)>;

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  Var constant(Matrix value);
  Var variable(Matrix value);
  /// Borrow an external matrix without copying; it must outlive the tape.
  Var constant_ref(const Matrix& value);
  Var variable_ref(const Matrix& value);

  /// Record an op result. `fn` is dropped when no parent requires a gradient.
  Var record(Matrix value, std::initializer_list<Var> parents, BackwardFn fn);
  Var record(Matrix value, const std::vector<Var>& parents, BackwardFn fn);

  /// Reverse sweep from a 1x1 node.
  void backward(Var loss);

  const Matrix& value(Var v) const { return value(v.id()); }
  const Matrix& value(int id) const;
  bool requires_grad(Var v) const { return nodes_[static_cast<std::size_t>(v.id())].requires_grad; }

  /// Gradient of the last backward() target with respect to v (zeros if unreached).
  const Matrix& grad(Var v);
  /// Upstream gradient of node `id`; only meaningful inside a BackwardFn.
  const Matrix& upstream(int id) const { return nodes_[static_cast<std::size_t>(id)].grad; }

  template <class Derived>
  void accumulate(Var v, const Eigen::MatrixBase<Derived>& g) {
    Node& n = nodes_[static_cast<std::size_t>(v.id())];
    if (!n.requires_grad) return;
    if (n.grad.size() == 0) {
      n.grad = g;
    } else {
      n.grad += g;
    }
  }

  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Matrix own;
    const Matrix* external = nullptr;
    Matrix grad;
    bool requires_grad = false;
    BackwardFn backward;
  };

  Var push(Node node);

  std::vector<Node> nodes_;
};

inline const Matrix& Var::value() const { return tape_->value(id_); }
inline bool Var::requires_grad() const { return tape_->requires_grad(*this); }

// ---- primitive ops -------------------------------------------------------------

Var matmul(Var a, Var b);
/// a (N x M) plus a broadcast 1 x M row.
Var add_row(Var a, Var row);
Var add(Var a, Var b);
Var sub(Var a, Var b);
Var hadamard(Var a, Var b);
Var scale(Var a, double s);
/// a + c elementwise for a constant c.
Var add_scalar(Var a, double c);
Var tanh(Var a);
Var sigmoid(Var a);
/// Sum of all entries, 1x1.
Var sum(Var a);
Var mean(Var a);
/// N x 1 column of per-row sums.
Var row_sum(Var a);
/// Columns [start, start + count).
Var slice_cols(Var a, Eigen::Index start, Eigen::Index count);
/// out(:, j) = a(:, index[j]).
Var gather_cols(Var a, const std::vector<int>& index);
/// Per-column affine map out(:, j) = a(:, j) * scale[j] + shift[j]; shift/scale are constants.
Var affine_cols(Var a, const RowVector& shift, const RowVector& scale);
/// Each row divided by its sum.
Var normalize_rows(Var a);
/// (1/N) sum_k w_k * mean_j (a_kj - b_kj)^2 ; empty `weights` means all ones.
Var weighted_mse(Var a, Var b, const Vector& weights = Vector());
/// (1/N) sum_k w_k * x_k for an N x 1 column x.
Var weighted_mean_rows(Var column, const Vector& weights = Vector());
/// Per-row standard-normal log density, N x 1.
Var normal_log_density(Var z);

}  // namespace flowdistill::nn
