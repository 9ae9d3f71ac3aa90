#ifndef MOVINGSLAB_GROUPS_HPP
#define MOVINGSLAB_GROUPS_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace movingslab {

enum class GroupLabel
{
   Coarse,
   Medium,
   Fine,
   Custom,
};

std::string_view to_string(GroupLabel label);
std::optional<GroupLabel> parse_group_label(std::string_view name);

/// Photon-energy group boundaries in keV; N groups have N + 1 strictly
/// increasing positive edges.
class GroupStructure
{
  public:
   explicit GroupStructure(Eigen::VectorXd edges, GroupLabel label = GroupLabel::Custom);

   const Eigen::VectorXd& edges() const noexcept { return edges_; }
   Eigen::Index group_count() const noexcept { return edges_.size() - 1; }
   double lower(Eigen::Index g) const { return edges_[g]; }
   double upper(Eigen::Index g) const { return edges_[g + 1]; }
   Eigen::VectorXd widths() const;
   GroupLabel label() const noexcept { return label_; }

   bool operator==(const GroupStructure& other) const;

  private:
   Eigen::VectorXd edges_;
   GroupLabel label_;
};

/// n groups with edges e_min (e_max/e_min)^(i/n).
GroupStructure build_log_groups(Eigen::Index n, double e_min, double e_max,
                                GroupLabel label = GroupLabel::Custom);

/// Adds edges log-uniformly inside [band_lo, band_hi] until the structure has
/// target_total groups. Every base edge is kept.
GroupStructure refine_groups(const GroupStructure& base, double band_lo, double band_hi,
                             Eigen::Index target_total, GroupLabel label = GroupLabel::Custom);

/// 50 log-spaced groups on [0.001, 30] keV.
GroupStructure coarse_groups();
/// Coarse refined to 89 groups inside [1, 10] keV.
GroupStructure medium_groups();
/// Medium refined to 124 groups inside [1, 2] keV.
GroupStructure fine_groups();
GroupStructure preset_groups(GroupLabel label);

/// Reads one edge per line (first comma-separated column), '#' comments.
GroupStructure load_group_edges(std::istream& in);

}  // namespace movingslab

#endif  // MOVINGSLAB_GROUPS_HPP
