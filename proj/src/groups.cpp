#include "movingslab/groups.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <stdexcept>
#include <vector>

namespace movingslab {

std::string_view to_string(GroupLabel label)
{
   switch (label)
   {
   case GroupLabel::Coarse:
      return "coarse";
   case GroupLabel::Medium:
      return "medium";
   case GroupLabel::Fine:
      return "fine";
   case GroupLabel::Custom:
      return "custom";
   }
   return "custom";
}

std::optional<GroupLabel> parse_group_label(std::string_view name)
{
   for (auto label : {GroupLabel::Coarse, GroupLabel::Medium, GroupLabel::Fine, GroupLabel::Custom})
   {
      if (name == to_string(label))
         return label;
   }
   return std::nullopt;
}

GroupStructure::GroupStructure(Eigen::VectorXd edges, GroupLabel label)
    : edges_(std::move(edges)), label_(label)
{
   if (edges_.size() < 2)
      throw std::invalid_argument("group structure needs at least two edges");
   for (Eigen::Index i = 0; i < edges_.size(); ++i)
   {
      if (!(edges_[i] > 0.0) || !std::isfinite(edges_[i]))
         throw std::invalid_argument("group edges must be positive and finite");
      if (i > 0 && !(edges_[i] > edges_[i - 1]))
         throw std::invalid_argument("group edges must be strictly increasing (edge " +
                                     std::to_string(i) + ")");
   }
}

Eigen::VectorXd GroupStructure::widths() const
{
   return edges_.tail(group_count()) - edges_.head(group_count());
}

bool GroupStructure::operator==(const GroupStructure& other) const
{
   return edges_.size() == other.edges_.size() && edges_ == other.edges_;
}

GroupStructure build_log_groups(Eigen::Index n, double e_min, double e_max, GroupLabel label)
{
   if (n < 1)
      throw std::domain_error("need at least one group");
   if (!(e_min > 0.0) || !(e_max > e_min) || !std::isfinite(e_max))
      throw std::domain_error("need 0 < e_min < e_max");
   Eigen::VectorXd edges(n + 1);
   const double ratio = e_max / e_min;
   for (Eigen::Index i = 0; i <= n; ++i)
      edges[i] = e_min * std::pow(ratio, static_cast<double>(i) / static_cast<double>(n));
   edges[0] = e_min;
   edges[n] = e_max;
   return GroupStructure(std::move(edges), label);
}

GroupStructure refine_groups(const GroupStructure& base, double band_lo, double band_hi,
                             Eigen::Index target_total, GroupLabel label)
{
   const auto& old_edges = base.edges();
   if (!(band_lo > 0.0) || !(band_hi > band_lo))
      throw std::domain_error("refinement band must satisfy 0 < lo < hi");
   if (band_lo < old_edges[0] || band_hi > old_edges[old_edges.size() - 1])
      throw std::domain_error("refinement band lies outside the base structure");
   const Eigen::Index extra = target_total - base.group_count();
   if (extra < 1)
      throw std::domain_error("refinement must add at least one group");

   std::vector<double> merged(old_edges.begin(), old_edges.end());
   const double ratio = band_hi / band_lo;
   for (Eigen::Index j = 1; j <= extra; ++j)
      merged.push_back(band_lo *
                       std::pow(ratio, static_cast<double>(j) / static_cast<double>(extra + 1)));
   std::sort(merged.begin(), merged.end());

   // Collapse near-coincident edges; surviving neighbours of base edges are
   // snapped back to the base value below.
   std::vector<double> unique;
   unique.reserve(merged.size());
   for (double e : merged)
   {
      if (!unique.empty() && std::abs(e - unique.back()) <= 1e-12 * e)
         continue;
      unique.push_back(e);
   }
   if (static_cast<Eigen::Index>(unique.size()) != target_total + 1)
      throw std::runtime_error("refinement cannot reach " + std::to_string(target_total) +
                               " groups: inserted edges coincide with existing ones");

   // Base edges must survive exactly.
   for (double e : old_edges)
   {
      auto it = std::lower_bound(unique.begin(), unique.end(), e * (1.0 - 1e-12));
      if (it != unique.end() && std::abs(*it - e) <= 1e-12 * e)
         *it = e;
   }
   return GroupStructure(Eigen::Map<Eigen::VectorXd>(unique.data(),
                                                     static_cast<Eigen::Index>(unique.size())),
                         label);
}

GroupStructure coarse_groups()
{
   return build_log_groups(50, 0.001, 30.0, GroupLabel::Coarse);
}

GroupStructure medium_groups()
{
   return refine_groups(coarse_groups(), 1.0, 10.0, 89, GroupLabel::Medium);
}

GroupStructure fine_groups()
{
   return refine_groups(medium_groups(), 1.0, 2.0, 124, GroupLabel::Fine);
}

GroupStructure preset_groups(GroupLabel label)
{
   switch (label)
   {
   case GroupLabel::Coarse:
      return coarse_groups();
   case GroupLabel::Medium:
      return medium_groups();
   case GroupLabel::Fine:
      return fine_groups();
   case GroupLabel::Custom:
      break;
   }
   throw std::invalid_argument("custom group structures have no preset");
}

GroupStructure load_group_edges(std::istream& in)
{
   std::vector<double> edges;
   std::string line;
   std::size_t line_no = 0;
   while (std::getline(in, line))
   {
      ++line_no;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#')
         continue;
      auto field = line.substr(first, line.find(',', first) - first);
      while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r'))
         field.pop_back();
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
      if (ec != std::errc{} || ptr != field.data() + field.size())
         throw std::invalid_argument("group edge file line " + std::to_string(line_no) +
                                     ": cannot parse '" + field + "'");
      edges.push_back(value);
   }
   return GroupStructure(Eigen::Map<Eigen::VectorXd>(edges.data(),
                                                     static_cast<Eigen::Index>(edges.size())),
                         GroupLabel::Custom);
}

}  // namespace movingslab
