#ifndef SALEM_SERIALIZE_HPP
#define SALEM_SERIALIZE_HPP

#include <string>

#include "salem/schedule.hpp"
#include "salem/tree.hpp"

namespace salem {

std::string schedule_to_json(const BranchingSchedule& s);
BranchingSchedule schedule_from_json(const std::string& text);

std::string tree_to_json(const CantorTree& t);
CantorTree tree_from_json(const std::string& text);

}  // namespace salem

#endif
