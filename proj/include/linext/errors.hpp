#pragma once

#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace linext {

using BigCount = mpz_class;
using Ratio = mpq_class;

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct cycle_detected : error {
  using error::error;
};
struct label_out_of_range : error {
  using error::error;
};
struct cap_exceeded : error {
  using error::error;
};
struct precondition_violated : error {
  using error::error;
};
struct internal_contradiction : error {
  using error::error;
};
struct not_found : error {
  using error::error;
};
struct dimension_mismatch : error {
  using error::error;
};
struct degenerate_input : error {
  using error::error;
};
struct singular_interpolation : error {
  using error::error;
};

}  // namespace linext
