#pragma once

#include <vector>

#include "adictree/op.hpp"
#include "adictree/shifts.hpp"

namespace adictree {

/// An eventually constant sequence of cylinder functions: a finite prefix
/// f_0..f_{K-1} followed by the limit function for every later slot.
class ConvergentSequence {
 public:
  ConvergentSequence(std::vector<CylinderFunction> prefix, CylinderFunction limit);

  static ConvergentSequence constant(const CylinderFunction& f) { return {{}, f}; }

  int base() const { return limit_.base(); }
  int prefix_size() const { return static_cast<int>(prefix_.size()); }
  const CylinderFunction& at(int n) const;
  const CylinderFunction& limit() const { return limit_; }

  /// sup_n ||f_n||_inf.
  double sup_norm() const;
  int max_depth() const;

  ConvergentSequence conjugated() const;
  friend ConvergentSequence operator*(const ConvergentSequence&, const ConvergentSequence&);
  friend ConvergentSequence operator+(const ConvergentSequence&, const ConvergentSequence&);

 private:
  std::vector<CylinderFunction> prefix_;
  CylinderFunction limit_;
};

/// A pair (f, (x_n)) with lim x_n = f(0), enforced exactly: the scalar
/// sequence is f(0) from slot K on.
class XVFunction {
 public:
  XVFunction(CylinderFunction f, std::vector<Complex> prefix);

  int base() const { return f_.base(); }
  const CylinderFunction& function() const { return f_; }
  int prefix_size() const { return static_cast<int>(prefix_.size()); }
  Complex at(int n) const;

  /// max(max_n |x_n|, ||f||_inf).
  double sup_norm() const;

  XVFunction conjugated() const;
  friend XVFunction operator*(const XVFunction&, const XVFunction&);
  friend XVFunction operator+(const XVFunction&, const XVFunction&);

 private:
  CylinderFunction f_;
  std::vector<Complex> prefix_;
};

/// sum_{n<K} M_{f_n - f_inf} P_n + M_{f_inf} over the Bunce-Deddens
/// projection family.
TruncatedOperator toeplitz_bd(const TruncatedSpace& space, const ConvergentSequence& seq);

/// sum_{n<K} (x_n - f(0)) P_(n,0) + M_f over the Hensel rank-one family.
TruncatedOperator toeplitz_hensel(const TruncatedSpace& space, const XVFunction& data);

/// sum_{n<K} P_n M_{g_n - g_inf} P_n + M_{g_inf} over the Serre family.
TruncatedOperator toeplitz_serre(const TruncatedSpace& space, const ConvergentSequence& seq);

/// The sequence-level endomorphisms intertwined with shift conjugation of
/// the Bunce-Deddens Toeplitz image. The dual map shifts slots up and
/// inserts 0 at slot 0.
ConvergentSequence tilde_map(EndoKind dir, const ConvergentSequence& seq);

/// Likewise for the Hensel data, with x_{-1} = 0.
XVFunction tilde_map(EndoKind dir, const XVFunction& data);

/// Right shift of a sequence by one slot with 0 inserted (slotwise, no
/// function map); the Serre conjugation matches this modulo finite support.
ConvergentSequence slot_shift(const ConvergentSequence& seq);

/// Gauge Fourier coefficient of a with respect to the shift J: the degree-d
/// part normalized by J-words, so that a_d J^d (resp. (J*)^{-d} a_d)
/// reassembles the degree-d part of a.
TruncatedOperator fourier_coefficient(const TruncatedOperator& a, int degree, ShiftKind kind);

}  // namespace adictree
