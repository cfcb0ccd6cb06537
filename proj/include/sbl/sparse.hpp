#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "sbl/errors.hpp"

namespace sbl {

using Complex = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;
using Triplet = Eigen::Triplet<Complex>;
using Vector = Eigen::VectorXcd;

// Hermitian-flagged sparse operator over a declared basis dimension.
// Coordinate triplets are canonicalized to compressed sorted rows on
// construction, duplicates summed, so arithmetic is deterministic. A set
// hermitian flag is verified against the conjugate transpose.
class SparseOp {
public:
    SparseOp() = default;

    SparseOp(Eigen::Index dim, const std::vector<Triplet>& entries, bool hermitian)
        : hermitian_(hermitian) {
        mat_.resize(dim, dim);
        mat_.setFromTriplets(entries.begin(), entries.end());
        mat_.makeCompressed();
        if (hermitian_) check_hermitian();
    }

    SparseOp(SparseMatrix mat, bool hermitian)
        : mat_(std::move(mat)), hermitian_(hermitian) {
        if (mat_.rows() != mat_.cols())
            throw DimensionError("SparseOp requires a square matrix");
        mat_.makeCompressed();
        if (hermitian_) check_hermitian();
    }

    static SparseOp identity(Eigen::Index dim) {
        SparseMatrix m(dim, dim);
        m.setIdentity();
        return SparseOp(std::move(m), true);
    }

    Eigen::Index dim() const { return mat_.rows(); }
    Eigen::Index nonzeros() const { return mat_.nonZeros(); }
    bool hermitian() const { return hermitian_; }
    const SparseMatrix& matrix() const { return mat_; }

    Vector apply(const Vector& v) const {
        if (v.size() != mat_.cols())
            throw DimensionError("operator/vector dimension mismatch");
        return mat_ * v;
    }

    SparseOp adjoint() const {
        return SparseOp(SparseMatrix(mat_.adjoint()), hermitian_);
    }

    SparseOp scaled(Complex c) const {
        bool herm = hermitian_ && c.imag() == 0.0;
        return SparseOp(SparseMatrix(c * mat_), herm);
    }

    SparseOp shifted(double s) const {
        SparseMatrix ident(dim(), dim());
        ident.setIdentity();
        return SparseOp(SparseMatrix(mat_ + s * ident), hermitian_);
    }

    friend SparseOp operator+(const SparseOp& a, const SparseOp& b) {
        if (a.dim() != b.dim())
            throw DimensionError("operator dimension mismatch in sum");
        return SparseOp(SparseMatrix(a.mat_ + b.mat_), a.hermitian_ && b.hermitian_);
    }

    friend SparseOp operator-(const SparseOp& a, const SparseOp& b) {
        if (a.dim() != b.dim())
            throw DimensionError("operator dimension mismatch in difference");
        return SparseOp(SparseMatrix(a.mat_ - b.mat_), a.hermitian_ && b.hermitian_);
    }

    friend SparseOp operator*(const SparseOp& a, const SparseOp& b) {
        if (a.dim() != b.dim())
            throw DimensionError("operator dimension mismatch in product");
        return SparseOp(SparseMatrix(a.mat_ * b.mat_), false);
    }

    // Largest entry magnitude.
    double max_abs() const {
        double m = 0;
        for (int o = 0; o < mat_.outerSize(); ++o)
            for (SparseMatrix::InnerIterator it(mat_, o); it; ++it)
                m = std::max(m, std::abs(it.value()));
        return m;
    }

    // True when every stored value has exactly zero imaginary part.
    bool is_real() const {
        for (int o = 0; o < mat_.outerSize(); ++o)
            for (SparseMatrix::InnerIterator it(mat_, o); it; ++it)
                if (it.value().imag() != 0.0) return false;
        return true;
    }

    Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(mat_); }

    SparseOp block(Eigen::Index row, Eigen::Index col, Eigen::Index size, bool hermitian) const {
        SparseMatrix b = mat_.block(row, col, size, size);
        return SparseOp(std::move(b), hermitian);
    }

    double hermiticity_defect() const {
        SparseMatrix d = mat_ - SparseMatrix(mat_.adjoint());
        double m = 0;
        for (int o = 0; o < d.outerSize(); ++o)
            for (SparseMatrix::InnerIterator it(d, o); it; ++it)
                m = std::max(m, std::abs(it.value()));
        return m;
    }

private:
    void check_hermitian() const {
        double scale = std::max(1.0, max_abs());
        if (hermiticity_defect() > 1e-13 * scale)
            throw ModelError("operator flagged hermitian is not selfadjoint to 1e-13");
    }

    SparseMatrix mat_;
    bool hermitian_ = false;
};

}  // namespace sbl
