#pragma once

#include <stdexcept>
#include <string>

namespace bfly {

enum class errc {
  reducible_modulus,
  degree_mismatch,
  unsupported_degree,
  zero_inverse,
  bad_parameters,
  too_large,
  shape_mismatch,
  bad_range,
  bad_hypotheses,
  singular_matrix,
  budget_exceeded,
};

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace bfly
