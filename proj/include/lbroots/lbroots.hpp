#pragma once

#include "lbroots/errors.hpp"
#include "lbroots/scalar.hpp"
#include "lbroots/quad.hpp"
#include "lbroots/specialfn.hpp"
#include "lbroots/jet.hpp"
#include "lbroots/equation.hpp"
#include "lbroots/engine.hpp"
#include "lbroots/trinomial.hpp"
#include "lbroots/oracle.hpp"
#include "lbroots/famous.hpp"
