#pragma once

#include <initializer_list>
#include <ostream>
#include <string>

namespace dosc {

/// %.17g; nan and inf spelled out, negative zero printed as 0.
std::string csv_number(double v);

void write_csv_row(std::ostream& out, std::initializer_list<std::string> cells);

}  // namespace dosc
