#include "sfpd/mechanisms.hpp"

#include "sfpd/errors.hpp"

namespace sfpd {

std::string to_string(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::None: return "none";
    case MechanismKind::Pop: return "pop";
    case MechanismKind::Ni: return "ni";
    case MechanismKind::Lc: return "lc";
    case MechanismKind::NiAndLc: return "ni_and_lc";
  }
  return "none";
}

std::optional<MechanismKind> parse_mechanism_kind(const std::string& name) {
  if (name == "none") return MechanismKind::None;
  if (name == "pop") return MechanismKind::Pop;
  if (name == "ni") return MechanismKind::Ni;
  if (name == "lc") return MechanismKind::Lc;
  if (name == "ni_and_lc") return MechanismKind::NiAndLc;
  return std::nullopt;
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

bool uses_pop(MechanismKind k) { return k == MechanismKind::Pop; }
bool uses_ni(MechanismKind k) {
  return k == MechanismKind::Ni || k == MechanismKind::NiAndLc;
}
bool uses_lc(MechanismKind k) {
  return k == MechanismKind::Lc || k == MechanismKind::NiAndLc;
}

}  // namespace

void MechanismSpec::validate() const {
  const std::string name = to_string(kind);
  require(pop_threshold_percent.has_value() == uses_pop(kind),
          uses_pop(kind)
              ? "mechanism " + name + " requires pop_threshold_percent"
              : "pop_threshold_percent is not used by mechanism " + name);
  require(influence_threshold.has_value() == uses_ni(kind),
          uses_ni(kind)
              ? "mechanism " + name + " requires influence_threshold"
              : "influence_threshold is not used by mechanism " + name);
  require(local_coop_threshold.has_value() == uses_lc(kind),
          uses_lc(kind)
              ? "mechanism " + name + " requires local_coop_threshold"
              : "local_coop_threshold is not used by mechanism " + name);
  if (pop_threshold_percent)
    require(*pop_threshold_percent >= 0.0 && *pop_threshold_percent <= 100.0,
            "pop_threshold_percent must be in [0,100]");
  if (influence_threshold)
    require(*influence_threshold >= 0.0 && *influence_threshold <= 1.0,
            "influence_threshold must be in [0,1]");
  if (local_coop_threshold) {
    if (local_coop_absolute)
      require(*local_coop_threshold >= 0.0,
              "local_coop_threshold (absolute) must be >= 0");
    else
      require(*local_coop_threshold >= 0.0 && *local_coop_threshold <= 1.0,
              "local_coop_threshold (fraction) must be in [0,1]");
  }
  if (kind == MechanismKind::None)
    require(theta == 0.0, "mechanism none does not take a theta");
  else
    require(theta > 0.0, "theta must be > 0");
}

MechanismSpec MechanismSpec::none() { return MechanismSpec{}; }

MechanismSpec MechanismSpec::pop(double percent, double theta) {
  MechanismSpec s;
  s.kind = MechanismKind::Pop;
  s.pop_threshold_percent = percent;
  s.theta = theta;
  s.validate();
  return s;
}

MechanismSpec MechanismSpec::ni(double c_i, double theta) {
  MechanismSpec s;
  s.kind = MechanismKind::Ni;
  s.influence_threshold = c_i;
  s.theta = theta;
  s.validate();
  return s;
}

MechanismSpec MechanismSpec::lc(double n_c, double theta, bool absolute) {
  MechanismSpec s;
  s.kind = MechanismKind::Lc;
  s.local_coop_threshold = n_c;
  s.local_coop_absolute = absolute;
  s.theta = theta;
  s.validate();
  return s;
}

MechanismSpec MechanismSpec::ni_and_lc(double c_i, double n_c, double theta,
                                       bool absolute) {
  MechanismSpec s;
  s.kind = MechanismKind::NiAndLc;
  s.influence_threshold = c_i;
  s.local_coop_threshold = n_c;
  s.local_coop_absolute = absolute;
  s.theta = theta;
  s.validate();
  return s;
}

namespace {

// Influence condition: relative degree reaches c_I (inclusive, so c_I = 1
// still targets maximum-degree nodes).
bool ni_qualifies(const Graph& g, std::uint32_t v, double c_i) {
  return static_cast<double>(g.degree(v)) /
             static_cast<double>(g.max_degree()) >=
         c_i;
}

// Local-cooperation condition: cooperative neighbourhood strictly below n_C.
bool lc_qualifies(const Graph& g, const PopulationState& state,
                  std::uint32_t v, double n_c, bool absolute) {
  std::uint32_t coop = 0;
  for (std::uint32_t w : g.neighbors(v))
    if (state.at(w) == Strategy::Cooperate) ++coop;
  if (absolute) return static_cast<double>(coop) < n_c;
  const std::uint32_t d = g.degree(v);
  if (d == 0) return 0.0 < n_c;  // isolated cooperator: fraction taken as 0
  return static_cast<double>(coop) / static_cast<double>(d) < n_c;
}

template <typename Pred>
std::vector<std::uint32_t> filter_cooperators(const PopulationState& state,
                                              Pred&& pred) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 0; v < state.size(); ++v)
    if (state.at(v) == Strategy::Cooperate && pred(v)) out.push_back(v);
  return out;
}

}  // namespace

std::vector<std::uint32_t> select_pop(const PopulationState& state,
                                      const MechanismSpec& spec) {
  const double percent = 100.0 * static_cast<double>(state.cooperator_count()) /
                         static_cast<double>(state.size());
  if (percent > *spec.pop_threshold_percent) return {};
  return filter_cooperators(state, [](std::uint32_t) { return true; });
}

std::vector<std::uint32_t> select_ni(const Graph& g,
                                     const PopulationState& state,
                                     const MechanismSpec& spec) {
  const double c_i = *spec.influence_threshold;
  return filter_cooperators(
      state, [&](std::uint32_t v) { return ni_qualifies(g, v, c_i); });
}

std::vector<std::uint32_t> select_lc(const Graph& g,
                                     const PopulationState& state,
                                     const MechanismSpec& spec) {
  const double n_c = *spec.local_coop_threshold;
  const bool absolute = spec.local_coop_absolute;
  return filter_cooperators(state, [&](std::uint32_t v) {
    return lc_qualifies(g, state, v, n_c, absolute);
  });
}

std::vector<std::uint32_t> select_combo(const Graph& g,
                                        const PopulationState& state,
                                        const MechanismSpec& spec) {
  const double c_i = *spec.influence_threshold;
  const double n_c = *spec.local_coop_threshold;
  const bool absolute = spec.local_coop_absolute;
  return filter_cooperators(state, [&](std::uint32_t v) {
    return ni_qualifies(g, v, c_i) && lc_qualifies(g, state, v, n_c, absolute);
  });
}

InvestmentDecision decide(const Graph& g, const PopulationState& state,
                          const MechanismSpec& spec) {
  if (spec.kind == MechanismKind::None) return {};
  if (is_homogeneous(state)) return {};  // absorbing; interference stops
  InvestmentDecision d;
  switch (spec.kind) {
    case MechanismKind::Pop: d.invested = select_pop(state, spec); break;
    case MechanismKind::Ni: d.invested = select_ni(g, state, spec); break;
    case MechanismKind::Lc: d.invested = select_lc(g, state, spec); break;
    case MechanismKind::NiAndLc:
      d.invested = select_combo(g, state, spec);
      break;
    case MechanismKind::None: break;
  }
  d.generation_cost = static_cast<double>(d.invested.size()) * spec.theta;
  return d;
}

}  // namespace sfpd
