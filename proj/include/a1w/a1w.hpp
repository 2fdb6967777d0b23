#pragma once

#include <a1w/a1.hpp>
#include <a1w/campaign.hpp>
#include <a1w/covering.hpp>
#include <a1w/generators.hpp>
#include <a1w/io.hpp>
#include <a1w/majorization.hpp>
#include <a1w/rational.hpp>
#include <a1w/sharp.hpp>
#include <a1w/step_weight.hpp>
