#pragma once
#include "canon.hpp"
#include "equivalence.hpp"
#include "models.hpp"
#include "mx.hpp"
#include "poly.hpp"
#include "rewrite.hpp"
#include "simple.hpp"
#include "term.hpp"
#include "text.hpp"
