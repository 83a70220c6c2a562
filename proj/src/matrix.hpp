#pragma once

#include <vector>

#include "cyclotomic.hpp"
#include "errors.hpp"

namespace branchcover {

// Small dense matrices over cyclotomic fields; sized for the representation
// degrees in play (at most a few dozen).
class CycloMatrix {
public:
    CycloMatrix() : rows_(0), cols_(0) {}
    CycloMatrix(unsigned rows, unsigned cols)
        : rows_(rows), cols_(cols),
          a_(static_cast<size_t>(rows) * cols, Cyclotomic::zero()) {}

    static CycloMatrix identity(unsigned n) {
        CycloMatrix m(n, n);
        for (unsigned i = 0; i < n; ++i) m.at(i, i) = Cyclotomic::one();
        return m;
    }

    unsigned rows() const { return rows_; }
    unsigned cols() const { return cols_; }

    Cyclotomic& at(unsigned i, unsigned j) {
        return a_[static_cast<size_t>(i) * cols_ + j];
    }
    const Cyclotomic& at(unsigned i, unsigned j) const {
        return a_[static_cast<size_t>(i) * cols_ + j];
    }

    CycloMatrix operator*(const CycloMatrix& o) const {
        ensure(cols_ == o.rows_, "matrix product shape mismatch");
        CycloMatrix out(rows_, o.cols_);
        for (unsigned i = 0; i < rows_; ++i)
            for (unsigned k = 0; k < cols_; ++k) {
                const Cyclotomic& left = at(i, k);
                if (left.is_zero()) continue;
                for (unsigned j = 0; j < o.cols_; ++j)
                    out.at(i, j) += left * o.at(k, j);
            }
        return out;
    }

    CycloMatrix operator*(const Cyclotomic& c) const {
        CycloMatrix out = *this;
        for (auto& x : out.a_) x *= c;
        return out;
    }

    CycloMatrix operator+(const CycloMatrix& o) const {
        ensure(rows_ == o.rows_ && cols_ == o.cols_,
               "matrix sum shape mismatch");
        CycloMatrix out = *this;
        for (size_t i = 0; i < a_.size(); ++i) out.a_[i] += o.a_[i];
        return out;
    }

    CycloMatrix operator-(const CycloMatrix& o) const {
        ensure(rows_ == o.rows_ && cols_ == o.cols_,
               "matrix difference shape mismatch");
        CycloMatrix out = *this;
        for (size_t i = 0; i < a_.size(); ++i) out.a_[i] -= o.a_[i];
        return out;
    }

    CycloMatrix pow(long long e) const {
        ensure(rows_ == cols_ && e >= 0, "matrix power needs square base, e >= 0");
        CycloMatrix acc = identity(rows_), base = *this;
        unsigned long long k = static_cast<unsigned long long>(e);
        while (k) {
            if (k & 1) acc = acc * base;
            if (k >>= 1) base = base * base;
        }
        return acc;
    }

    Cyclotomic trace() const {
        ensure(rows_ == cols_, "trace of a non-square matrix");
        Cyclotomic t = Cyclotomic::zero();
        for (unsigned i = 0; i < rows_; ++i) t += at(i, i);
        return t;
    }

    bool operator==(const CycloMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) return false;
        for (size_t i = 0; i < a_.size(); ++i)
            if (a_[i] != o.a_[i]) return false;
        return true;
    }
    bool operator!=(const CycloMatrix& o) const { return !(*this == o); }

    // Characteristic polynomial det(xI - A), constant term first, exact, via
    // the Faddeev-LeVerrier recurrence.
    std::vector<Cyclotomic> char_poly() const {
        ensure(rows_ == cols_, "char_poly of a non-square matrix");
        const unsigned n = rows_;
        std::vector<Cyclotomic> c(n + 1, Cyclotomic::zero());
        c[n] = Cyclotomic::one();
        CycloMatrix N = identity(n);
        for (unsigned k = 1; k <= n; ++k) {
            const CycloMatrix M = *this * N;
            const Cyclotomic ck =
                -(M.trace() * Cyclotomic::from_rational(
                                  Rational(1, static_cast<long>(k))));
            c[n - k] = ck;
            N = M;
            for (unsigned i = 0; i < n; ++i) N.at(i, i) += ck;
        }
        return c;
    }

private:
    unsigned rows_, cols_;
    std::vector<Cyclotomic> a_;
};

} // namespace branchcover
