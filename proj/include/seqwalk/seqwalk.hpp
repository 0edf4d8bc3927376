#pragma once

#include "seqwalk/error.hpp"
#include "seqwalk/scalar.hpp"
#include "seqwalk/linalg.hpp"
#include "seqwalk/quiver.hpp"
#include "seqwalk/path_algebra.hpp"
#include "seqwalk/io.hpp"
#include "seqwalk/homology.hpp"
#include "seqwalk/detector.hpp"
#include "seqwalk/reduction.hpp"
#include "seqwalk/pipeline.hpp"
