#pragma once

namespace rankeval {

// Selects the OpenMP kernel or the serial reference. Both produce identical
// results; contributions are always accumulated in sorted key order.
enum class Execution { serial, parallel };

}  // namespace rankeval
