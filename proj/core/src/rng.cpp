#include "qdecomp/rng.hpp"

// Header-only for now; this TU anchors the target.
