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

#pragma once

#include "opaf/types.hpp"

namespace opaf {

// Extended-precision scalar references the protocols are measured against.
// These evaluate the exact math directly and share no code with the secure
// evaluation path.

real128 exp_ref(real128 x);
real128 sigmoid_ref(real128 x);
real128 tanh_ref(real128 x);

// The protocols encode non-negative inputs as -(x+1), which shifts them by
// one grid step eps = 2^-s before the exponential. The comparison targets
// below bake that shift in so ULP counts measure protocol error only.
real128 sigmoid_target(long double x_f, int s);  // sigmoid(x_f + eps) if x_f >= 0
real128 tanh_target(long double x_f, int s);     // 2*sigmoid(2*x_f + eps) - 1 if x_f >= 0

}  // namespace opaf
