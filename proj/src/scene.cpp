#include "pih/scene.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace pih {

using nlohmann::json;

void PegHoleScene::validate() const {
  if (!(clearance() > 0.0))
    throw std::invalid_argument("scene: hole_half_width must exceed peg_half_width");
  if (!(hole_half_width > 0.0) || !(peg_half_width > 0.0) || !(hole_depth > 0.0) ||
      !(peg_height > 0.0))
    throw std::invalid_argument("scene: geometry must be positive");
  if (!(surface_stiffness > 0.0))
    throw std::invalid_argument("scene: surface_stiffness must be > 0");
  if (!(contact_damping >= 0.0))
    throw std::invalid_argument("scene: contact_damping must be >= 0");
  if (!(friction_mu >= 0.0 && friction_mu < 2.0))
    throw std::invalid_argument("scene: friction_mu must be in [0, 2)");
  if (std::abs(insertion_axis.norm() - 1.0) > 1e-6)
    throw std::invalid_argument("scene: insertion_axis must be a unit vector");
  const Vec3 frame_axis = -hole_rotation().col(2);
  if ((frame_axis - insertion_axis).norm() > 1e-6)
    throw std::invalid_argument("scene: insertion_axis must equal hole frame -z");
}

void RandomizationRanges::validate() const {
  if (init_pos_range < 0.0 || init_ang_range_deg < 0.0 || goal_noise_pos_bound < 0.0 ||
      goal_noise_ang_bound_deg < 0.0)
    throw std::invalid_argument("ranges: spans must be non-negative");
  if (fg_low > fg_high) throw std::invalid_argument("ranges: fg_low > fg_high");
  if (fg_low < 0.0) throw std::invalid_argument("ranges: fg_low must be >= 0");
  if (stiffness_low > stiffness_high || stiffness_low <= 0.0)
    throw std::invalid_argument("ranges: invalid stiffness span");
  if (standoff < 0.0) throw std::invalid_argument("ranges: standoff must be >= 0");
  for (const Vec3& a : insertion_axes)
    if (std::abs(a.norm() - 1.0) > 1e-6)
      throw std::invalid_argument("ranges: insertion axes must be unit vectors");
}

Quat orientation_for_axis(const Vec3& insertion_axis) {
  const Vec3 z = -insertion_axis.normalized();
  // Stable in-plane complement: start from whichever world axis is least
  // aligned with z.
  Vec3 ref = Vec3::UnitX();
  if (std::abs(z.x()) > 0.9) ref = Vec3::UnitY();
  Vec3 x = (ref - z * ref.dot(z)).normalized();
  Vec3 y = z.cross(x);
  Eigen::Matrix3d r;
  r.col(0) = x;
  r.col(1) = y;
  r.col(2) = z;
  return canonical_sign(Quat(r));
}

namespace {

json vec3_to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

Vec3 vec3_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument("expected 3-element array");
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

json pose_to_json(const Pose& x) {
  return json{{"p", vec3_to_json(x.p)},
              {"q", json::array({x.q.w(), x.q.x(), x.q.y(), x.q.z()})}};
}

Pose pose_from_json(const json& j) {
  const json& q = j.at("q");
  if (!q.is_array() || q.size() != 4) throw std::invalid_argument("pose: expected 4-element q");
  return Pose(vec3_from_json(j.at("p")),
              Quat(q[0].get<double>(), q[1].get<double>(), q[2].get<double>(),
                   q[3].get<double>()));
}

}  // namespace

PegHoleScene scene_from_json_text(const std::string& text) {
  json j = json::parse(text);
  PegHoleScene s;
  if (j.contains("hole_pose")) s.hole_pose = pose_from_json(j.at("hole_pose"));
  s.hole_half_width = j.value("hole_half_width", s.hole_half_width);
  s.peg_half_width = j.value("peg_half_width", s.peg_half_width);
  s.hole_depth = j.value("hole_depth", s.hole_depth);
  s.peg_height = j.value("peg_height", s.peg_height);
  s.surface_stiffness = j.value("surface_stiffness", s.surface_stiffness);
  s.contact_damping = j.value("contact_damping", s.contact_damping);
  s.friction_mu = j.value("friction_mu", s.friction_mu);
  if (j.contains("insertion_axis")) {
    s.insertion_axis = vec3_from_json(j.at("insertion_axis")).normalized();
  } else {
    s.insertion_axis = -s.hole_rotation().col(2);
  }
  s.planar = j.value("planar", s.planar);
  s.validate();
  return s;
}

std::string scene_to_json_text(const PegHoleScene& s) {
  json j{{"hole_pose", pose_to_json(s.hole_pose)},
         {"hole_half_width", s.hole_half_width},
         {"peg_half_width", s.peg_half_width},
         {"hole_depth", s.hole_depth},
         {"peg_height", s.peg_height},
         {"surface_stiffness", s.surface_stiffness},
         {"contact_damping", s.contact_damping},
         {"friction_mu", s.friction_mu},
         {"insertion_axis", vec3_to_json(s.insertion_axis)},
         {"planar", s.planar}};
  return j.dump(2);
}

PegHoleScene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scene file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return scene_from_json_text(ss.str());
}

void save_scene(const PegHoleScene& scene, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write scene file: " + path);
  out << scene_to_json_text(scene) << "\n";
}

RandomizationRanges ranges_from_json_text(const std::string& text) {
  json j = json::parse(text);
  RandomizationRanges r;
  r.init_pos_range = j.value("init_pos_range", r.init_pos_range);
  r.init_ang_range_deg = j.value("init_ang_range_deg", r.init_ang_range_deg);
  r.goal_noise_pos_bound = j.value("goal_noise_pos_bound", r.goal_noise_pos_bound);
  r.goal_noise_ang_bound_deg = j.value("goal_noise_ang_bound_deg", r.goal_noise_ang_bound_deg);
  if (j.contains("goal_bias")) r.goal_bias = vec3_from_json(j.at("goal_bias"));
  r.fg_low = j.value("fg_low", r.fg_low);
  r.fg_high = j.value("fg_high", r.fg_high);
  r.stiffness_low = j.value("stiffness_low", r.stiffness_low);
  r.stiffness_high = j.value("stiffness_high", r.stiffness_high);
  if (j.contains("insertion_axes"))
    for (const auto& a : j.at("insertion_axes"))
      r.insertion_axes.push_back(vec3_from_json(a).normalized());
  r.standoff = j.value("standoff", r.standoff);
  r.validate();
  return r;
}

std::string ranges_to_json_text(const RandomizationRanges& r) {
  json axes = json::array();
  for (const Vec3& a : r.insertion_axes) axes.push_back(vec3_to_json(a));
  json j{{"init_pos_range", r.init_pos_range},
         {"init_ang_range_deg", r.init_ang_range_deg},
         {"goal_noise_pos_bound", r.goal_noise_pos_bound},
         {"goal_noise_ang_bound_deg", r.goal_noise_ang_bound_deg},
         {"goal_bias", vec3_to_json(r.goal_bias)},
         {"fg_low", r.fg_low},
         {"fg_high", r.fg_high},
         {"stiffness_low", r.stiffness_low},
         {"stiffness_high", r.stiffness_high},
         {"insertion_axes", axes},
         {"standoff", r.standoff}};
  return j.dump(2);
}

}  // namespace pih
