#include <doctest.h>

#include <cmath>
#include <sstream>

#include "movingslab/groups.hpp"
#include "approx.hpp"

using namespace movingslab;

namespace {

bool contains_edge(const GroupStructure& s, double edge)
{
   for (Eigen::Index i = 0; i < s.edges().size(); ++i)
      if (s.edges()[i] == edge)
         return true;
   return false;
}

bool strictly_increasing(const Eigen::VectorXd& e)
{
   for (Eigen::Index i = 1; i < e.size(); ++i)
      if (!(e[i] > e[i - 1]))
         return false;
   return true;
}

}  // namespace

TEST_CASE("coarse structure")
{
   const auto coarse = coarse_groups();
   CHECK(coarse.group_count() == 50);
   CHECK(coarse.label() == GroupLabel::Coarse);
   CHECK(coarse.edges()[0] == testing::approx(0.001).epsilon(1e-15));
   CHECK(coarse.edges()[50] == testing::approx(30.0).epsilon(1e-15));
   CHECK(coarse.edges()[25] == testing::approx(0.001 * std::sqrt(30000.0)).epsilon(1e-14));
   CHECK(coarse.edges()[25] == testing::approx(0.173205).epsilon(1e-6));
   const auto ratio = coarse.edges()[1] / coarse.edges()[0];
   for (Eigen::Index i = 1; i < 50; ++i)
      REQUIRE(coarse.edges()[i + 1] / coarse.edges()[i] == testing::approx(ratio).epsilon(1e-12));
}

TEST_CASE("single group")
{
   const auto one = build_log_groups(1, 0.5, 2.0);
   CHECK(one.group_count() == 1);
   CHECK(one.lower(0) == 0.5);
   CHECK(one.upper(0) == 2.0);
   CHECK(one.widths()[0] == 1.5);
}

TEST_CASE("refined presets nest")
{
   const auto coarse = coarse_groups();
   const auto medium = medium_groups();
   const auto fine = fine_groups();
   CHECK(medium.edges().size() == 90);
   CHECK(fine.edges().size() == 125);
   CHECK(strictly_increasing(medium.edges()));
   CHECK(strictly_increasing(fine.edges()));

   for (Eigen::Index i = 0; i < coarse.edges().size(); ++i)
      REQUIRE(contains_edge(medium, coarse.edges()[i]));
   for (Eigen::Index i = 0; i < medium.edges().size(); ++i)
      REQUIRE(contains_edge(fine, medium.edges()[i]));

   for (Eigen::Index i = 0; i < medium.edges().size(); ++i)
   {
      const double e = medium.edges()[i];
      if (!contains_edge(coarse, e))
         REQUIRE((e >= 1.0 && e <= 10.0));
   }
   for (Eigen::Index i = 0; i < fine.edges().size(); ++i)
   {
      const double e = fine.edges()[i];
      if (!contains_edge(medium, e))
         REQUIRE((e >= 1.0 && e <= 2.0));
   }
   CHECK(preset_groups(GroupLabel::Fine) == fine);
}

TEST_CASE("refinement errors")
{
   const auto coarse = coarse_groups();
   CHECK_THROWS_AS(refine_groups(coarse, 1.0, 10.0, 50), std::domain_error);
   CHECK_THROWS_AS(refine_groups(coarse, 1.0, 10.0, 40), std::domain_error);
   CHECK_THROWS_AS(refine_groups(coarse, 40.0, 50.0, 60), std::domain_error);
   CHECK_THROWS_AS(refine_groups(coarse, 2.0, 1.0, 60), std::domain_error);
}

TEST_CASE("invalid structures")
{
   CHECK_THROWS_AS(build_log_groups(0, 0.001, 30.0), std::domain_error);
   CHECK_THROWS_AS(build_log_groups(10, 0.0, 30.0), std::domain_error);
   CHECK_THROWS_AS(build_log_groups(10, 5.0, 1.0), std::domain_error);

   Eigen::VectorXd unsorted(3);
   unsorted << 1.0, 3.0, 2.0;
   CHECK_THROWS_AS(GroupStructure{unsorted}, std::invalid_argument);

   std::istringstream in("# edges\n0.1\n0.3\n0.2\n");
   CHECK_THROWS_AS(load_group_edges(in), std::invalid_argument);
}

TEST_CASE("edge files")
{
   std::istringstream in("# custom\n0.1,extra\n0.5\n\n2.0\n");
   const auto s = load_group_edges(in);
   CHECK(s.group_count() == 2);
   CHECK(s.label() == GroupLabel::Custom);
   CHECK(s.upper(1) == 2.0);
}

TEST_CASE("labels")
{
   CHECK(parse_group_label("medium") == GroupLabel::Medium);
   CHECK_FALSE(parse_group_label("ultra").has_value());
   CHECK(to_string(GroupLabel::Fine) == "fine");
}
