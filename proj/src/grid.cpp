#include "drough/grid.hpp"

// Grid is header-only; this TU anchors the target.
