#pragma once

#include <cstdint>
#include <vector>

#include "wstar/states.hpp"

namespace wstar {

/// Completely positive trace-preserving map between direct-sum algebras in
/// the Schrodinger picture, stored in block-structured Kraus form: for each
/// (source block k, target block l) a list of n_l x n_k matrices, with
/// sum_{l,alpha} K^dagger K = I_{n_k} for every source block.
class Channel {
 public:
  Channel() = default;

  const Signature& source() const { return source_; }
  const Signature& target() const { return target_; }

  const std::vector<Matrix>& kraus(int k, int l) const {
    return components_[static_cast<std::size_t>(k * target_.blocks() + l)];
  }

  friend Channel make_channel(Signature, Signature,
                              std::vector<std::vector<std::vector<Matrix>>>);

 private:
  Signature source_;
  Signature target_;
  // Flattened [k][l] -> Kraus list.
  std::vector<std::vector<Matrix>> components_;
};

/// Validates shapes and trace preservation (1e-10 per source block).
/// components[k][l] lists the Kraus pieces from source block k to target
/// block l; empty lists are allowed.
Channel make_channel(Signature source, Signature target,
                     std::vector<std::vector<std::vector<Matrix>>> components);

/// Raw Kraus application to a block tuple (no state validation).
std::vector<Matrix> apply_raw(const Channel& ch,
                              const std::vector<Matrix>& blocks);

/// Applies the channel to a faithful state and re-validates the image;
/// throws NotFaithfulImage when the image fails the faithfulness floor.
FaithfulState apply(const Channel& ch, const FaithfulState& rho);

/// Pushforward of a tangent vector (linear action of the same Kraus data).
TangentVector apply(const Channel& ch, const TangentVector& v);

/// Heisenberg-picture dual: x -> sum K^dagger x K, a unital CP map from the
/// target algebra back to the source algebra.
AlgebraElement heisenberg_dual(const Channel& ch, const AlgebraElement& x);

/// True iff the image of the maximally mixed state clears the floor. A CP
/// map is faithfulness-preserving everywhere iff it is at the maximally
/// mixed state, since every faithful state dominates a multiple of it.
bool is_faithful(const Channel& ch, double floor = kFaithfulnessFloor);

/// Composite ch2 after ch1 (Kraus products along all block paths).
Channel compose(const Channel& ch2, const Channel& ch1);

/// Classical channel on commutative signatures from a column-stochastic
/// matrix S (m x n, columns sum to 1): scalar Kraus sqrt(S_jk).
Channel markov_channel(const Eigen::MatrixXd& S);

struct EmbeddingPair {
  Channel embed;
  Channel left_inverse;
};

/// Classical congruent embedding: cell_of maps each of the m target
/// coordinates to one of n source cells, weights[j] > 0 sum to 1 inside each
/// cell. embed sends p_i to the weighted split over cell i; left_inverse
/// sums cells back.
EmbeddingPair congruent_embedding_classical(int n_cells,
                                            const std::vector<int>& cell_of,
                                            const std::vector<double>& weights);

/// Quantum congruent embedding rho -> U (rho x sigma) U^dagger with ancilla
/// state sigma on a single block [d] and unitary U on C^(n d); the left
/// inverse is rho' -> Tr_ancilla(U^dagger rho' U).
EmbeddingPair congruent_embedding_quantum(const Matrix& unitary,
                                          const FaithfulState& sigma);

/// Gaussian block Kraus draw, kraus_count pieces per (k,l) pair, right
/// normalized by the inverse square root of sum K^dagger K per source block.
/// Redraws on near-singular normalizers; DegenerateDraw after 100 attempts.
Channel random_channel(const Signature& source, const Signature& target,
                       int kraus_count, std::uint64_t seed);

/// Transfer matrix of component (k,l) on column-major vectorized input,
/// vec(Phi_kl(rho)) = T vec(rho).
Matrix component_transfer_matrix(const Channel& ch, int k, int l);

/// Choi matrix of a transfer matrix (reshuffle); PSD iff the map is CP.
Matrix choi_from_transfer(const Matrix& transfer, int n_src, int n_tgt);

/// Extracts a Kraus family from a Choi matrix; throws NotCompletelyPositive
/// if an eigenvalue drops below -tol.
std::vector<Matrix> kraus_from_choi(const Matrix& choi, int n_src, int n_tgt,
                                    double tol = 1e-9);

}  // namespace wstar
