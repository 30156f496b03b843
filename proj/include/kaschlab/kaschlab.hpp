#pragma once

#include "kaschlab/error.hpp"
#include "kaschlab/field.hpp"
#include "kaschlab/matrix.hpp"
#include "kaschlab/polynomial.hpp"
#include "kaschlab/algebra.hpp"
#include "kaschlab/constructors.hpp"
#include "kaschlab/zoo.hpp"
#include "kaschlab/radical.hpp"
#include "kaschlab/module.hpp"
#include "kaschlab/wedderburn.hpp"
#include "kaschlab/homological.hpp"
#include "kaschlab/properties.hpp"
#include "kaschlab/dsl.hpp"
#include "kaschlab/corpus.hpp"
#include "kaschlab/report.hpp"
#include "kaschlab/goldens.hpp"
