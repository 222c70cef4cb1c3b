// Unit-norm embedding vectors and the operations that act directly on them.
#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "semnet/common.hpp"
#include "semnet/rng.hpp"

namespace semnet {

// A message's meaning as a point on the unit sphere. Normalization happens at
// construction; everything downstream may assume unit norm.
class SemanticVector {
public:
    SemanticVector() = default;

    explicit SemanticVector(Eigen::VectorXd values) : v_(std::move(values)) {
        const double n = v_.norm();
        if (!(n > 1e-12)) throw DomainError("semantic vector has (near-)zero norm");
        v_ /= n;
    }

    int dim() const { return static_cast<int>(v_.size()); }
    bool empty() const { return v_.size() == 0; }
    const Eigen::VectorXd& values() const { return v_; }

private:
    Eigen::VectorXd v_;
};

inline double cosine_similarity(const SemanticVector& a, const SemanticVector& b) {
    if (a.empty() || b.empty()) throw DomainError("cosine_similarity: empty vector");
    if (a.dim() != b.dim()) throw ConfigError("cosine_similarity: dimension mismatch");
    return clamp(a.values().dot(b.values()), -1.0, 1.0);
}

// Gaussian noise per component, renormalized. sigma == 0 returns the input
// bit-for-bit and consumes no draws.
inline SemanticVector perturb_embedding(const SemanticVector& s, double sigma, Rng& rng) {
    if (sigma < 0.0) throw ConfigError("perturb_embedding: negative sigma");
    if (sigma == 0.0) return s;
    Eigen::VectorXd v = s.values();
    for (int i = 0; i < v.size(); ++i) v[i] += rng.normal(0.0, sigma);
    return SemanticVector(v);
}

// Seeded Gaussian random projection. One instance is built per run and applied
// to every vector (messages, concepts, task vectors) so similarities stay
// comparable. target == dim uses the identity.
class RandomProjection {
public:
    RandomProjection() = default;

    RandomProjection(int dim, int target, std::uint64_t seed) : dim_(dim), target_(target) {
        if (target > dim) throw ConfigError("random projection: target dim exceeds source dim");
        if (target <= 0) throw ConfigError("random projection: target dim must be positive");
        if (target == dim) return;  // identity mode
        Rng rng(seed);
        p_.resize(target, dim);
        const double scale = 1.0 / std::sqrt(static_cast<double>(target));
        for (int r = 0; r < target; ++r)
            for (int c = 0; c < dim; ++c) p_(r, c) = scale * rng.normal();
    }

    bool identity() const { return target_ == dim_; }
    int target_dim() const { return target_; }

    SemanticVector apply(const SemanticVector& s) const {
        if (s.dim() != dim_) throw ConfigError("random projection: input dim mismatch");
        if (identity()) return s;
        return SemanticVector(p_ * s.values());
    }

private:
    int dim_ = 0;
    int target_ = 0;
    Eigen::MatrixXd p_;
};

inline SemanticVector reduce_dimension(const SemanticVector& s, const RandomProjection& proj) {
    return proj.apply(s);
}

}  // namespace semnet
