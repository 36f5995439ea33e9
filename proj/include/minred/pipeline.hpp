#pragma once

#include "minred/minimal.hpp"

namespace minred {

/// One global minimal model: the per-prime valuation descents applied in
/// ascending prime order (no orbit enumeration).
std::pair<EndoModel, Mat2> global_minimal_model(const EndoModel& f);

}  // namespace minred
