#include "illusion/scenario_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace illusion {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string &what) { throw Error(ErrorCode::Parse, "scenario: " + what); }

const json &require(const json &obj, const char *key, const std::string &where) {
  if (!obj.is_object() || !obj.contains(key))
    parse_fail("missing key '" + where + key + "'");
  return obj.at(key);
}

double number(const json &j, const std::string &where) {
  if (!j.is_number())
    parse_fail("'" + where + "' must be a number");
  return j.get<double>();
}

Point2 point(const json &j, const std::string &where) {
  if (!j.is_array() || j.size() != 2)
    parse_fail("'" + where + "' must be an array of 2 numbers");
  return {number(j[0], where), number(j[1], where)};
}

// A weight matrix given either as its diagonal or as a full nested matrix.
template <int N> Eigen::Matrix<double, N, N> weight(const json &j, const std::string &where) {
  Eigen::Matrix<double, N, N> m = Eigen::Matrix<double, N, N>::Zero();
  if (!j.is_array() || j.size() != N)
    parse_fail("'" + where + "' must have " + std::to_string(N) + " entries");
  if (j[0].is_array()) {
    for (int r = 0; r < N; ++r) {
      if (!j[r].is_array() || j[r].size() != N)
        parse_fail("'" + where + "' must be " + std::to_string(N) + "x" + std::to_string(N));
      for (int c = 0; c < N; ++c)
        m(r, c) = number(j[r][c], where);
    }
  } else {
    for (int i = 0; i < N; ++i)
      m(i, i) = number(j[i], where);
  }
  return m;
}

const json &weight_key(const json &producer, const char *short_key, const char *long_key) {
  if (producer.contains(short_key))
    return producer.at(short_key);
  return require(producer, long_key, "producer.");
}

template <typename Mat> json weight_json(const Mat &m) {
  if (m.isDiagonal(0.0)) {
    json d = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      d.push_back(m(i, i));
    return d;
  }
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

json point_json(const Point2 &p) { return json::array({p.x(), p.y()}); }

ProducerMode parse_mode(const json &j) {
  const auto s = j.is_string() ? j.get<std::string>() : std::string{};
  if (s == "lqr")
    return ProducerMode::Lqr;
  if (s == "mpc")
    return ProducerMode::Mpc;
  parse_fail("'producer.mode' must be \"lqr\" or \"mpc\"");
}

} // namespace

Scenario parse_scenario(const std::string &json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error &e) {
    parse_fail(e.what());
  }

  Scenario s = default_scenario();

  const json &towers = require(root, "towers", "");
  if (!towers.is_array() || towers.size() != 3)
    parse_fail("'towers' must list exactly three towers");
  for (std::size_t i = 0; i < 3; ++i) {
    const std::string where = "towers[" + std::to_string(i) + "].";
    s.towers.positions[i] = point(require(towers[i], "position", where), where + "position");
    s.towers.calibration[static_cast<Eigen::Index>(i)] =
        number(require(towers[i], "calibration", where), where + "calibration");
  }

  const json &rx = require(root, "receiver", "");
  s.receiver.goal = point(require(rx, "goal", "receiver."), "receiver.goal");
  s.receiver.gain = number(require(rx, "gain", "receiver."), "receiver.gain");
  if (rx.contains("theta_min"))
    s.receiver.theta.lower = point(rx.at("theta_min"), "receiver.theta_min");
  if (rx.contains("theta_max"))
    s.receiver.theta.upper = point(rx.at("theta_max"), "receiver.theta_max");

  const json &px = require(root, "producer", "");
  s.producer.goal = point(require(px, "goal", "producer."), "producer.goal");
  s.producer.Q = weight<4>(weight_key(px, "q", "q_diag_or_matrix"), "producer.q");
  s.producer.R = weight<2>(weight_key(px, "r", "r_diag_or_matrix"), "producer.r");
  s.producer.mode = parse_mode(require(px, "mode", "producer."));
  if (px.contains("horizon")) {
    if (!px.at("horizon").is_number_integer())
      parse_fail("'producer.horizon' must be an integer");
    s.producer.horizon = px.at("horizon").get<int>();
  }

  s.receiver.variant = paired_variant(s.producer.mode);
  if (rx.contains("variant")) {
    const json &v = rx.at("variant");
    const auto name = v.is_string() ? v.get<std::string>() : std::string{};
    if (name == "simple")
      s.receiver.variant = ReceiverVariant::Simple;
    else if (name == "advanced")
      s.receiver.variant = ReceiverVariant::Advanced;
    else if (name != "auto")
      parse_fail("'receiver.variant' must be \"simple\", \"advanced\" or \"auto\"");
  }

  const json &init = require(root, "initial", "");
  s.initial_position = point(require(init, "position", "initial."), "initial.position");
  s.initial_estimate = point(require(init, "estimate", "initial."), "initial.estimate");

  const json &term = require(root, "termination", "");
  s.termination_epsilon = number(require(term, "epsilon", "termination."), "termination.epsilon");
  if (term.contains("max_stages")) {
    if (!term.at("max_stages").is_number_integer())
      parse_fail("'termination.max_stages' must be an integer");
    s.max_stages = term.at("max_stages").get<std::int64_t>();
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::Io, "cannot open scenario file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string dump_scenario(const Scenario &s) {
  json root;
  for (int i = 0; i < 3; ++i)
    root["towers"].push_back({{"position", point_json(s.towers.positions[i])},
                              {"calibration", s.towers.calibration[i]}});
  json rx = {{"goal", point_json(s.receiver.goal)},
             {"gain", s.receiver.gain},
             {"theta_min", point_json(s.receiver.theta.lower)},
             {"theta_max", point_json(s.receiver.theta.upper)}};
  // Omitted when it is the variant paired with the producer mode, so editing
  // the mode alone switches both.
  if (s.receiver.variant != paired_variant(s.producer.mode))
    rx["variant"] = to_string(s.receiver.variant);
  root["receiver"] = rx;
  root["producer"] = {{"goal", point_json(s.producer.goal)},
                      {"q", weight_json(s.producer.Q)},
                      {"r", weight_json(s.producer.R)},
                      {"mode", to_string(s.producer.mode)},
                      {"horizon", s.producer.horizon}};
  root["initial"] = {{"position", point_json(s.initial_position)}, {"estimate", point_json(s.initial_estimate)}};
  root["termination"] = {{"epsilon", s.termination_epsilon}, {"max_stages", s.max_stages}};
  return root.dump(2) + "\n";
}

void save_scenario(const Scenario &s, const std::filesystem::path &path) {
  std::ofstream out(path);
  if (!out)
    throw Error(ErrorCode::Io, "cannot write scenario file '" + path.string() + "'");
  out << dump_scenario(s);
  if (!out)
    throw Error(ErrorCode::Io, "failed writing '" + path.string() + "'");
}

} // namespace illusion
