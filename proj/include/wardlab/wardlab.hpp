#pragma once

#include "wardlab/catalogue.hpp"
#include "wardlab/classifiers.hpp"
#include "wardlab/compactness.hpp"
#include "wardlab/continuity.hpp"
#include "wardlab/convergence.hpp"
#include "wardlab/density.hpp"
#include "wardlab/errors.hpp"
#include "wardlab/expression.hpp"
#include "wardlab/lacunary.hpp"
#include "wardlab/rational.hpp"
#include "wardlab/real_set.hpp"
#include "wardlab/rng.hpp"
#include "wardlab/sequence.hpp"
