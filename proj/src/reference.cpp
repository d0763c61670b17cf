// Copyright 2026 The OPAF Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "opaf/reference.hpp"

#include <quadmath.h>

namespace opaf {

real128 exp_ref(real128 x) { return expq(x); }

real128 sigmoid_ref(real128 x) { return real128{1} / (real128{1} + expq(-x)); }

real128 tanh_ref(real128 x) { return tanhq(x); }

real128 sigmoid_target(long double x_f, int s) {
  real128 x = static_cast<real128>(x_f);
  if (x_f >= 0.0L) x += scalbnq(real128{1}, -s);
  return sigmoid_ref(x);
}

real128 tanh_target(long double x_f, int s) {
  real128 x2 = static_cast<real128>(x_f) * 2;
  if (x_f >= 0.0L) x2 += scalbnq(real128{1}, -s);
  return 2 * sigmoid_ref(x2) - 1;
}

}  // namespace opaf
