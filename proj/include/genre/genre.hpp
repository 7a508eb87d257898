// genre/genre.hpp -- umbrella header for the genre recognition library
#pragma once

#include "genre/corpus.hpp"
#include "genre/discriminant.hpp"
#include "genre/errors.hpp"
#include "genre/evaluation.hpp"
#include "genre/features.hpp"
#include "genre/linalg.hpp"
#include "genre/taxonomy.hpp"
#include "genre/terrmap.hpp"
