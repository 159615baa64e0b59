#include "bfly/vbf.hpp"

#include <bit>
#include <string>

#include "bfly/parallel.hpp"

namespace bfly {

namespace {

constexpr unsigned kMaxInputBits = 20;   // LUT storage cap
constexpr unsigned kMaxSweepBits = 18;   // full-spectrum / ANF cap

void fwht(std::int32_t* s, unsigned n) {
  const std::uint32_t N = 1u << n;
  for (std::uint32_t h = 1; h < N; h <<= 1)
    for (std::uint32_t i = 0; i < N; i += h << 1)
      for (std::uint32_t j = i; j < i + h; ++j) {
        const std::int32_t u = s[j], v = s[j + h];
        s[j] = u + v;
        s[j + h] = u - v;
      }
}

unsigned parity(std::uint32_t w) { return std::popcount(w) & 1u; }

// Degree of one output bit via the in-place Moebius (Reed-Muller) transform.
unsigned bit_degree(const Vbf& F, unsigned bit, std::vector<std::uint8_t>& buf) {
  const std::uint32_t N = F.size();
  for (std::uint32_t x = 0; x < N; ++x) buf[x] = (F[x] >> bit) & 1u;
  for (unsigned step = 0; step < F.n(); ++step)
    for (std::uint32_t x = 0; x < N; ++x)
      if ((x >> step) & 1u) buf[x] ^= buf[x ^ (1u << step)];
  unsigned deg = 0;
  for (std::uint32_t mask = 0; mask < N; ++mask)
    if (buf[mask]) deg = std::max<unsigned>(deg, std::popcount(mask));
  return deg;
}

}  // namespace

Vbf::Vbf(unsigned n, unsigned m, std::vector<std::uint32_t> lut)
    : n_(n), m_(m), lut_(std::move(lut)) {
  if (n == 0 || n > kMaxInputBits || m == 0 || m > 32)
    fail(errc::too_large, "Vbf dimensions out of range: n=" + std::to_string(n) +
                              " m=" + std::to_string(m));
  if (lut_.size() != (std::size_t{1} << n)) fail(errc::shape_mismatch, "LUT length != 2^n");
  const std::uint64_t bound = m >= 32 ? 0xFFFFFFFFull : (1ull << m) - 1;
  for (std::uint32_t v : lut_)
    if (v > bound) fail(errc::shape_mismatch, "LUT entry exceeds m bits");
}

DiffProfile differential_uniformity(const Vbf& F, unsigned workers) {
  const std::uint32_t N = F.size();
  const std::uint32_t M = 1u << F.m();
  const unsigned nw = resolve_workers(workers);

  struct Local {
    unsigned delta = 0;
    std::map<std::uint64_t, std::uint64_t> spectrum;
  };
  std::vector<Local> locals(nw);

  parallel_chunks(1, N, nw, [&](unsigned c, std::uint64_t lo, std::uint64_t hi) {
    Local& L = locals[c];
    std::vector<std::uint32_t> hist(M);
    for (std::uint64_t a = lo; a < hi; ++a) {
      std::fill(hist.begin(), hist.end(), 0);
      for (std::uint32_t x = 0; x < N; ++x) ++hist[F[x ^ static_cast<std::uint32_t>(a)] ^ F[x]];
      for (std::uint32_t b = 0; b < M; ++b) {
        ++L.spectrum[hist[b]];
        if (hist[b] > L.delta) L.delta = hist[b];
      }
    }
  });

  DiffProfile out;
  for (const Local& L : locals) {
    out.delta = std::max(out.delta, L.delta);
    for (const auto& [v, c] : L.spectrum) out.spectrum[v] += c;
  }
  return out;
}

std::int64_t walsh_value(const Vbf& F, std::uint32_t a, std::uint32_t b) {
  std::int64_t sum = 0;
  const std::uint32_t N = F.size();
  for (std::uint32_t x = 0; x < N; ++x)
    sum += (parity((b & F[x]) ^ (a & x)) ? -1 : 1);
  return sum;
}

WalshProfile walsh_spectrum(const Vbf& F, unsigned workers) {
  if (F.n() > kMaxSweepBits) fail(errc::too_large, "walsh_spectrum: n > 18");
  const std::uint32_t N = F.size();
  const std::uint32_t M = 1u << F.m();
  const unsigned nw = resolve_workers(workers);

  struct Local {
    std::map<std::int64_t, std::uint64_t> spectrum;
    std::int64_t max_abs = 0;
  };
  std::vector<Local> locals(nw);

  parallel_chunks(1, M, nw, [&](unsigned c, std::uint64_t lo, std::uint64_t hi) {
    Local& L = locals[c];
    std::vector<std::int32_t> sign(N);
    for (std::uint64_t b = lo; b < hi; ++b) {
      for (std::uint32_t x = 0; x < N; ++x)
        sign[x] = parity(static_cast<std::uint32_t>(b) & F[x]) ? -1 : 1;
      fwht(sign.data(), F.n());
      for (std::uint32_t a = 0; a < N; ++a) {
        const std::int64_t w = sign[a];
        ++L.spectrum[w];
        if (std::abs(w) > L.max_abs) L.max_abs = std::abs(w);
      }
    }
  });

  WalshProfile out;
  for (const Local& L : locals) {
    out.max_abs = std::max(out.max_abs, L.max_abs);
    for (const auto& [v, c] : L.spectrum) out.spectrum[v] += c;
  }
  out.nonlinearity = (1ull << (F.n() - 1)) - static_cast<std::uint64_t>(out.max_abs) / 2;
  return out;
}

std::vector<std::vector<std::uint32_t>> anf(const Vbf& F) {
  if (F.n() > kMaxSweepBits) fail(errc::too_large, "anf: n > 18");
  const std::uint32_t N = F.size();
  std::vector<std::vector<std::uint32_t>> out(F.m());
  std::vector<std::uint8_t> buf(N);
  for (unsigned bit = 0; bit < F.m(); ++bit) {
    for (std::uint32_t x = 0; x < N; ++x) buf[x] = (F[x] >> bit) & 1u;
    for (unsigned step = 0; step < F.n(); ++step)
      for (std::uint32_t x = 0; x < N; ++x)
        if ((x >> step) & 1u) buf[x] ^= buf[x ^ (1u << step)];
    for (std::uint32_t mask = 0; mask < N; ++mask)
      if (buf[mask]) out[bit].push_back(mask);
  }
  return out;
}

std::vector<unsigned> coordinate_degrees(const Vbf& F) {
  if (F.n() > kMaxSweepBits) fail(errc::too_large, "coordinate_degrees: n > 18");
  std::vector<unsigned> degs(F.m());
  std::vector<std::uint8_t> buf(F.size());
  for (unsigned bit = 0; bit < F.m(); ++bit) degs[bit] = bit_degree(F, bit, buf);
  return degs;
}

unsigned algebraic_degree(const Vbf& F) {
  unsigned deg = 0;
  for (unsigned d : coordinate_degrees(F)) deg = std::max(deg, d);
  return deg;
}

unsigned degree_of_output_slice(const Vbf& F, unsigned hi, unsigned lo) {
  if (lo > hi || hi >= F.m()) fail(errc::bad_range, "output slice out of range");
  std::vector<std::uint8_t> buf(F.size());
  unsigned deg = 0;
  for (unsigned bit = lo; bit <= hi; ++bit) deg = std::max(deg, bit_degree(F, bit, buf));
  return deg;
}

bool is_permutation(const Vbf& F) {
  if (F.n() != F.m()) fail(errc::shape_mismatch, "is_permutation: n != m");
  std::vector<bool> seen(F.size());
  for (std::uint32_t x = 0; x < F.size(); ++x) {
    if (seen[F[x]]) return false;
    seen[F[x]] = true;
  }
  return true;
}

bool is_involution(const Vbf& F) {
  if (F.n() != F.m()) fail(errc::shape_mismatch, "is_involution: n != m");
  for (std::uint32_t x = 0; x < F.size(); ++x)
    if (F[F[x]] != x) return false;
  return true;
}

std::uint64_t fixed_points(const Vbf& F) {
  if (F.n() != F.m()) fail(errc::shape_mismatch, "fixed_points: n != m");
  std::uint64_t count = 0;
  for (std::uint32_t x = 0; x < F.size(); ++x)
    if (F[x] == x) ++count;
  return count;
}

unsigned walsh_divisibility_degree_bound(unsigned n,
                                         const std::map<std::int64_t, std::uint64_t>& spectrum) {
  unsigned l = n + 1;  // convention when every value is zero
  for (const auto& [v, c] : spectrum) {
    if (v == 0 || c == 0) continue;
    l = std::min<unsigned>(l, std::countr_zero(static_cast<std::uint64_t>(std::abs(v))));
  }
  return n - l + 1;
}

unsigned walsh_divisibility_degree_bound(const Vbf& F) {
  return walsh_divisibility_degree_bound(F.n(), walsh_spectrum(F).spectrum);
}

std::uint32_t AffineMap::apply(std::uint32_t x) const {
  std::uint32_t y = constant;
  for (unsigned r = 0; r < n_out; ++r) y ^= static_cast<std::uint32_t>(parity(rows[r] & x)) << r;
  return y;
}

bool AffineMap::invertible() const {
  if (n_in != n_out || rows.size() != n_in) return false;
  std::vector<std::uint32_t> m = rows;
  unsigned rank = 0;
  for (unsigned col = 0; col < n_in; ++col) {
    unsigned piv = rank;
    while (piv < n_in && !((m[piv] >> col) & 1u)) ++piv;
    if (piv == n_in) continue;
    std::swap(m[rank], m[piv]);
    for (unsigned r = 0; r < n_in; ++r)
      if (r != rank && ((m[r] >> col) & 1u)) m[r] ^= m[rank];
    ++rank;
  }
  return rank == n_in;
}

AffineMap AffineMap::identity(unsigned n) {
  AffineMap a;
  a.n_in = a.n_out = n;
  a.rows.resize(n);
  for (unsigned r = 0; r < n; ++r) a.rows[r] = 1u << r;
  return a;
}

Vbf compose_affine(const Vbf& F, const AffineMap& outer, const AffineMap& inner,
                   const AffineMap& add) {
  if (inner.n_in != F.n() || inner.n_out != F.n() || outer.n_in != F.m() ||
      outer.n_out != F.m() || add.n_in != F.n() || add.n_out != F.m())
    fail(errc::shape_mismatch, "compose_affine: dimension mismatch");
  if (!outer.invertible() || !inner.invertible())
    fail(errc::singular_matrix, "compose_affine: outer/inner map not invertible");
  std::vector<std::uint32_t> lut(F.size());
  for (std::uint32_t x = 0; x < F.size(); ++x)
    lut[x] = outer.apply(F[inner.apply(x)]) ^ add.apply(x);
  return Vbf(F.n(), F.m(), std::move(lut));
}

}  // namespace bfly
