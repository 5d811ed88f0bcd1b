#pragma once

#include "cmray/abelian.hpp"
#include "cmray/apcomplex.hpp"
#include "cmray/errors.hpp"
#include "cmray/fieldgen.hpp"
#include "cmray/forms.hpp"
#include "cmray/invariants.hpp"
#include "cmray/limitformula.hpp"
#include "cmray/modfun.hpp"
#include "cmray/qfield.hpp"
#include "cmray/rayclass.hpp"
#include "cmray/real.hpp"
#include "cmray/verify.hpp"
