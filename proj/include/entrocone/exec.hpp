#pragma once

namespace entrocone {

// Kernels with data-parallel inner loops take one of these; `serial` is the
// reference path, `parallel` the OpenMP path. Both must produce identical
// results (the test suites compare them).
enum class ExecPolicy { serial, parallel };

}  // namespace entrocone
