#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "cyclalg/kernels.hpp"

namespace cyclalg {

// Element of the ambient field F_{p^M}: the coefficient vector in the
// polynomial basis, packed base p (coefficient k is digit k of `code`).
struct FFElement {
  std::uint32_t code = 0;

  bool is_zero() const { return code == 0; }
  friend bool operator==(FFElement, FFElement) = default;
  friend auto operator<=>(FFElement, FFElement) = default;
};

enum class KernelChoice { Auto, Scalar };

// One ambient field F_{p^M}, M = i*d*b, holding every subfield as a
// Frobenius fixed set.  Immutable after construction.
class FieldTower {
 public:
  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 22;

  FieldTower(unsigned p, int i, int d, int b, KernelChoice kernel = KernelChoice::Auto);

  unsigned p() const { return p_; }
  int i() const { return i_; }
  int d() const { return d_; }
  int b() const { return b_; }
  int M() const { return M_; }
  std::uint64_t order() const { return q_; }
  // Low-to-high, length M+1, monic.
  const std::vector<unsigned>& modulus() const { return modulus_; }
  FFElement generator() const { return g_; }
  const kernels::Gf2Kernels& kernel() const { return *kern_; }

  FFElement zero() const { return {0}; }
  FFElement one() const { return {1}; }
  FFElement from_int(std::int64_t v) const;
  FFElement from_coeffs(const std::vector<unsigned>& c) const;
  std::vector<unsigned> coeffs(FFElement x) const;

  FFElement add(FFElement a, FFElement b) const;
  FFElement sub(FFElement a, FFElement b) const;
  FFElement neg(FFElement a) const;
  FFElement mul(FFElement a, FFElement b) const;
  FFElement inv(FFElement a) const;
  FFElement pow(FFElement a, std::uint64_t e) const;
  // Negative exponents invert first.
  FFElement pow_signed(FFElement a, std::int64_t e) const;
  // sum_{s<n} a[s] * b_end[-s]
  FFElement dot_rev(const FFElement* a, const FFElement* b_end, std::size_t n) const;

  // x^{p^e}, e reduced mod M (negative e allowed).
  FFElement frobenius(FFElement x, std::int64_t e) const;
  bool in_subfield(FFElement x, int j) const;
  std::uint64_t multiplicative_order(FFElement x) const;

  FFElement subfield_generator(int j) const;
  FFElement relative_norm(FFElement x, int j, int m) const;
  FFElement relative_trace(FFElement x, int j, int m) const;
  // Nonzero y in F_{p^{jm}} with frobenius(y, j) = c*y.
  FFElement hilbert90_solve(FFElement c, int j, int m) const;

  // All of F_{p^j} (zero included), sorted by code.
  const std::vector<FFElement>& subfield_elements(int j) const;

  std::string describe() const;
  // Integer when x lies in F_p, else "[c0,c1,...]".
  std::string format(FFElement x) const;
  FFElement parse(const std::string& text) const;

 private:
  void unpack(std::uint32_t code, unsigned* digits) const;
  std::uint32_t pack(const unsigned* digits) const;
  std::uint32_t reduce_gf2(std::uint64_t x) const;
  std::uint32_t reduce_digits(std::int64_t* acc) const;  // length 2M-1, consumed
  FFElement mul_raw(FFElement a, FFElement b) const;

  unsigned p_;
  int i_, d_, b_, M_;
  std::uint64_t q_;
  std::vector<unsigned> modulus_;
  std::vector<std::uint32_t> pw_;        // p^k
  std::vector<std::uint32_t> red_;       // p = 2: 256-entry chunks folding X^{M+k}
  std::vector<std::uint32_t> xpow_;      // X^{M+k} mod f, k < M-1
  std::vector<std::uint32_t> frob_cols_; // [e*M + k] = (X^k)^{p^e}
  FFElement g_;
  const kernels::Gf2Kernels* kern_;

  mutable std::mutex cache_mu_;
  mutable std::map<int, std::vector<FFElement>> subfield_cache_;
};

std::shared_ptr<const FieldTower> build_tower(unsigned p, int i, int d, int b,
                                              KernelChoice kernel = KernelChoice::Auto);

}  // namespace cyclalg
