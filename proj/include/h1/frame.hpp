#pragma once

#include <span>
#include <vector>

namespace h1 {

// Left-invariant frame directions: X = d/dx + 2y d/dt, Y = d/dy - 2x d/dt,
// T = d/dt.  [X, Y] = -4T.
enum class Frame : int { X = 0, Y = 1, T = 2 };

using FrameWord = std::vector<Frame>;

}  // namespace h1
