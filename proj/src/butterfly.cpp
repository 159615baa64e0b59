#include "bfly/butterfly.hpp"

#include <numeric>
#include <ostream>
#include <string>

#include "bfly/parallel.hpp"
#include "bfly/util.hpp"

namespace bfly {

const char* variant_name(Variant v) { return v == Variant::open ? "open" : "closed"; }

Butterfly::Butterfly(const Field& f, std::uint64_t e, felem alpha, Variant v,
                     std::optional<unsigned> i, std::optional<unsigned> t)
    : field_(f), e_(e), alpha_(alpha), variant_(v), i_(i), t_(t) {
  const unsigned k = f.k();
  if (2 * k > 18) fail(errc::too_large, "butterfly needs 2k <= 18, got k=" + std::to_string(k));
  if (alpha > f.mask()) fail(errc::bad_parameters, "alpha exceeds k bits");
  if (e == 0) fail(errc::bad_parameters, "exponent must be positive");
  e_red_ = e % f.order();
  if (e_red_ == 0 || std::gcd(e_red_, f.order()) != 1)
    fail(errc::bad_parameters,
         "gcd(e, 2^k-1) != 1: x^e is not a permutation for e=" + std::to_string(e));
  e_inv_ = mod_inverse(e_red_, f.order());
  strict_ = i.has_value() && (k % 2 == 1) && std::gcd<std::uint64_t>(*i, k) == 1 && alpha > 1;
}

Butterfly Butterfly::gold(const Field& f, unsigned i, unsigned t, felem alpha, Variant v) {
  if (i == 0 || i > 32) fail(errc::bad_parameters, "Gold parameter i must be in [1,32]");
  if (t >= f.k()) fail(errc::bad_parameters, "twist exponent t must be in [0,k-1]");
  const std::uint64_t e = ((1ull << i) + 1) << t;
  return Butterfly(f, e, alpha, v, i, t);
}

Butterfly Butterfly::raw(const Field& f, std::uint64_t e, felem alpha, Variant v) {
  return Butterfly(f, e, alpha, v, std::nullopt, std::nullopt);
}

felem Butterfly::keyed_perm(felem z, felem x) const {
  return field_.pow(x ^ field_.mul(alpha_, z), e_red_) ^ field_.pow(z, e_red_);
}

felem Butterfly::keyed_perm_inv(felem z, felem y) const {
  return field_.pow(y ^ field_.pow(z, e_red_), e_inv_) ^ field_.mul(alpha_, z);
}

std::pair<felem, felem> Butterfly::open_eval(felem x, felem y) const {
  const felem w = keyed_perm_inv(y, x);
  return {keyed_perm(w, y), w};
}

std::pair<felem, felem> Butterfly::closed_eval(felem x, felem y) const {
  return {keyed_perm(x, y), keyed_perm(y, x)};
}

Vbf Butterfly::materialize_lut(unsigned workers) const {
  const unsigned k = field_.k();
  const std::uint32_t N = field_.size();
  // Hoisted power and alpha-multiple tables make each entry O(1) lookups.
  std::vector<felem> pe(N), pinv(N), am(N);
  for (std::uint32_t x = 0; x < N; ++x) {
    pe[x] = field_.pow(x, e_red_);
    pinv[x] = field_.pow(x, e_inv_);
    am[x] = field_.mul(alpha_, x);
  }
  std::vector<std::uint32_t> lut(std::size_t{1} << (2 * k));
  const bool open = variant_ == Variant::open;
  parallel_chunks(0, N, resolve_workers(workers), [&](unsigned, std::uint64_t lo,
                                                      std::uint64_t hi) {
    for (std::uint64_t x = lo; x < hi; ++x) {
      const std::uint32_t xi = static_cast<std::uint32_t>(x);
      std::uint32_t* row = lut.data() + (x << k);
      for (std::uint32_t y = 0; y < N; ++y) {
        if (open) {
          const felem w = pinv[xi ^ pe[y]] ^ am[y];
          row[y] = (static_cast<std::uint32_t>(pe[y ^ am[w]] ^ pe[w]) << k) | w;
        } else {
          const felem left = pe[y ^ am[xi]] ^ pe[xi];
          const felem right = pe[xi ^ am[y]] ^ pe[y];
          row[y] = (static_cast<std::uint32_t>(left) << k) | right;
        }
      }
    }
  });
  return Vbf(2 * k, 2 * k, std::move(lut));
}

void export_lut_text(const Butterfly& b, const Vbf& lut, std::ostream& os) {
  os << "# butterfly k=" << b.field().k() << " e=" << b.e() << " alpha=" << hex_string(b.alpha())
     << " modulus=" << hex_string(b.field().modulus()) << " variant=" << variant_name(b.variant())
     << " packing=left-high\n";
  for (std::uint32_t x = 0; x < lut.size(); ++x) os << lut[x] << '\n';
}

void export_lut_binary(const Vbf& lut, std::ostream& os) {
  if (lut.m() > 16) fail(errc::too_large, "binary export needs entries <= 16 bits; use text");
  for (std::uint32_t x = 0; x < lut.size(); ++x) {
    const std::uint32_t v = lut[x];
    const char bytes[2] = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF)};
    os.write(bytes, 2);
  }
}

}  // namespace bfly
