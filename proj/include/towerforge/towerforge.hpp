#pragma once

#include "towerforge/bernoulli.hpp"
#include "towerforge/bigint.hpp"
#include "towerforge/cache.hpp"
#include "towerforge/characters.hpp"
#include "towerforge/criteria.hpp"
#include "towerforge/cyclo.hpp"
#include "towerforge/kummer_local.hpp"
#include "towerforge/numtheory.hpp"
#include "towerforge/pipeline.hpp"
#include "towerforge/polynomial.hpp"
#include "towerforge/ray_class.hpp"
#include "towerforge/report.hpp"
