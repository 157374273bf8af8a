#pragma once

// Umbrella header for the textclust document-clustering library.

#include "textclust/bench.hpp"
#include "textclust/criterion.hpp"
#include "textclust/datasets.hpp"
#include "textclust/evaluation.hpp"
#include "textclust/io.hpp"
#include "textclust/refinement.hpp"
#include "textclust/rng.hpp"
#include "textclust/seeding.hpp"
#include "textclust/sparse_vector.hpp"
#include "textclust/vectorizer.hpp"
