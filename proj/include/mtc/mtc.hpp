#pragma once

#include "field.hpp"
#include "matrix.hpp"
#include "algebra.hpp"
#include "radical.hpp"
#include "module.hpp"
#include "hom.hpp"
#include "dimvalue.hpp"
#include "approx.hpp"
#include "homology.hpp"
#include "domdim.hpp"
#include "correspondence.hpp"
#include "conjectures.hpp"
#include "catalog.hpp"
#include "io.hpp"
