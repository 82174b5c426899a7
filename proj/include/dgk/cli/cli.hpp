#pragma once

#include <algorithm>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dgk/analyze/analyze.hpp"
#include "dgk/cli/specs.hpp"

namespace dgk::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kPropertyFails = 1, kInputError = 2, kResourceError = 3 };

struct Options {
  std::string command;
  std::string ring_file;
  std::string lift_file;
  std::vector<int> degrees;
  bool json = false;
  bool slow = false;
  unsigned threads = 0;
};

/// Work above this many Koszul basis elements (dim R · 2^n) needs --slow.
inline constexpr double kDefaultBudget = 4e6;

template <ExactField F>
Json matrix_json(const Matrix<F>& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.field().to_string(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json betti_json(const BettiTable& b) {
  Json rows = Json::object();
  for (long r : b.row_labels()) {
    Json row = Json::array();
    const int width = r == 0 ? 1 : b.pdim + 1;
    for (int i = 0; i < width; ++i) row.push_back(b.at(i, r));
    rows[std::to_string(r)] = std::move(row);
  }
  return {{"rows", rows}, {"totals", b.totals}, {"pdim", b.pdim}, {"regularity", b.regularity}};
}

inline std::string pair_key(int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

template <ExactField F>
std::string witness_lift_text(const KoszulComplex<F>& kc, const IdentityWitness<F>& w) {
  const auto& z = kc.representative(1, w.h1_class);
  const std::string e = "e" + std::to_string(w.generator + 1);
  return e + " -> " + e + (to_string(z)[0] == '-' ? " " : " + ") + to_string(z);
}

template <ExactField F>
Json verdict_json(const KoszulComplex<F>& kc, const IdentityVerdict<F>& v) {
  Json per = Json::object();
  for (auto [d, ok] : v.per_degree) per[std::to_string(d)] = ok;
  Json ws = Json::array();
  for (const auto& w : v.witnesses)
    ws.push_back({{"generator", w.generator + 1},
                  {"h1_class", w.h1_class},
                  {"degree", w.degree},
                  {"lift", witness_lift_text(kc, w)},
                  {"difference", matrix_json(w.difference)}});
  return {{"overall", v.overall}, {"per_degree", per}, {"witnesses", ws}};
}

template <ExactField F>
Json suite_json(const KoszulComplex<F>& kc, const SuiteReport<F>& r) {
  Json products = Json::object();
  for (auto [ij, vanishes] : r.product_vanishing) products[pair_key(ij.first, ij.second)] = vanishes;
  Json pairing = Json::object();
  for (auto [i, ok] : r.pairing_perfect) pairing[std::to_string(i)] = ok;
  Json j;
  j["ring"] = r.ring;
  j["betti"] = betti_json(r.betti);
  j["homology_dims"] = r.dims;
  j["products"] = products;
  j["identity"] = verdict_json(kc, r.identity);
  j["group_law"] = r.group_law;
  j["abelian"] = r.abelian;
  j["exponent_p"] = r.exponent_p ? Json(*r.exponent_p) : Json(nullptr);
  j["gr_identity"] = r.gr_identity;
  j["gorenstein"] = {{"is_pd_algebra", r.is_pd_algebra}, {"pairing_perfect", pairing}};
  j["order"] = r.order ? Json(*r.order) : Json("infinity");
  j["complete_intersection"] = r.complete_intersection;
  j["h1_identity"] = r.h1_identity;
  j["top_identity"] = r.top_identity;
  j["filtration_shift"] = r.lemma_shift;
  j["duality_propagation"] = r.duality_propagation ? Json(*r.duality_propagation) : Json(nullptr);
  j["failures"] = r.failures;
  return j;
}

template <ExactField F>
void check_budget(const GradedRing<F>& ring, const Options& o) {
  if (o.slow || !ring.is_artinian()) return;
  double dim = 0;
  for (long d = 0; d <= *ring.top_degree(); ++d) dim += static_cast<double>(ring.dim(d));
  const double work = dim * static_cast<double>(1ull << ring.num_generators());
  if (work > kDefaultBudget)
    throw ResourceError("the Koszul complex has about " + std::to_string(static_cast<long long>(work)) +
                        " basis elements; rerun with --slow");
}

template <ExactField F>
std::vector<int> requested_degrees(const KoszulComplex<F>& kc, const Options& o) {
  if (!o.degrees.empty()) {
    for (int d : o.degrees)
      if (d < 0 || d > static_cast<int>(kc.n()))
        throw ValidationError("degree " + std::to_string(d) + " outside 0.." + std::to_string(kc.n()));
    return o.degrees;
  }
  std::vector<int> all;
  for (int d = 0; d <= static_cast<int>(kc.n()); ++d) all.push_back(d);
  return all;
}

template <ExactField F>
int run_command(const RingPtr<F>& ring, const Options& o, std::ostream& out) {
  check_budget(*ring, o);
  const unsigned threads = o.threads ? o.threads : std::max(1u, std::thread::hardware_concurrency());
  KoszulComplex<F> kc(ring, {threads});
  const auto& k = kc.field();
  const int n = static_cast<int>(kc.n());
  const auto dump = [&](const Json& j) { out << j.dump(2) << "\n"; };

  if (o.command == "betti") {
    const auto b = kc.betti_table();
    if (o.json) dump(betti_json(b));
    else out << b.to_text();
    return kOk;
  }

  if (o.command == "homology") {
    Json j = Json::object();
    for (int i = 0; i <= n; ++i) {
      Json reps = Json::array();
      if (!o.json) out << "H_" << i << ": dim " << kc.homology_dim(i) << "\n";
      for (const auto& c : kc.classes(i)) {
        if (o.json) reps.push_back({{"degree", c.degree}, {"cycle", to_string(c.representative)}});
        else out << "  [" << c.degree << "] " << to_string(c.representative) << "\n";
      }
      j[std::to_string(i)] = {{"dim", kc.homology_dim(i)}, {"classes", reps}};
    }
    if (o.json) dump(j);
    return kOk;
  }

  if (o.command == "products") {
    Json j = Json::object();
    for (int i = 1; i <= n; ++i)
      for (int l = i; i + l <= n; ++l) {
        const bool vanishes = kc.product_vanishing(i, l);
        Json ws = Json::array();
        if (!o.json) out << "H_" << i << "*H_" << l << (vanishes ? " = 0" : " != 0") << "\n";
        const auto& table = kc.product_table(i, l);
        for (std::size_t a = 0; a < table.size(); ++a)
          for (std::size_t b = 0; b < table[a].size(); ++b) {
            if (is_zero_vector(k, table[a][b])) continue;
            const auto lhs = to_string(kc.representative(i, a));
            const auto rhs = to_string(kc.representative(l, b));
            if (o.json) ws.push_back({lhs, rhs});
            else out << "  [" << lhs << "] * [" << rhs << "] != 0\n";
          }
        j[pair_key(i, l)] = {{"vanishes", vanishes}, {"nonzero", ws}};
      }
    if (o.json) dump(j);
    return kOk;
  }

  if (o.command == "check-identity") {
    const auto v = check_identity_all(kc, requested_degrees(kc, o));
    if (o.json) {
      dump(verdict_json(kc, v));
    } else {
      out << "identity: " << (v.overall ? "true" : "false") << "\n";
      for (auto [d, ok] : v.per_degree) out << "  H_" << d << ": " << (ok ? "identity" : "not identity") << "\n";
      for (const auto& w : v.witnesses)
        out << "witness: " << witness_lift_text(kc, w) << " on H_" << w.degree << ", H(phi) - I =\n"
            << to_string(w.difference);
    }
    return v.overall ? kOk : kPropertyFails;
  }

  if (o.command == "lift-action") {
    if (o.lift_file.empty()) throw ValidationError("lift-action needs --lift FILE");
    const auto phi = parse_lift<F>(read_file(o.lift_file), ring);
    HomologyFiltration<F> filt(kc);
    const auto gr = gr_induced_identity(filt, phi);
    bool all = true;
    Json per = Json::object();
    for (int d : requested_degrees(kc, o)) {
      const auto m = induced_map(kc, phi, d);
      all = all && m.is_identity;
      per[std::to_string(d)] = {{"identity", m.is_identity}, {"matrix", matrix_json(m.matrix)}};
      if (!o.json) {
        out << "H_" << d << ": " << (m.is_identity ? "identity" : "not identity") << "\n";
        if (!m.is_identity) out << to_string(m.matrix);
      }
    }
    if (o.json) dump({{"degrees", per}, {"identity", all}, {"gr_identity", gr.identity}});
    else out << "identity: " << (all ? "true" : "false") << "\ngr identity: " << (gr.identity ? "true" : "false") << "\n";
    return all ? kOk : kPropertyFails;
  }

  if (o.command == "order") {
    HomologyFiltration<F> filt(kc);
    const auto ord = ring_order(filt);
    if (o.json) dump({{"order", ord ? Json(*ord) : Json("infinity")}});
    else out << "order: " << (ord ? std::to_string(*ord) : "infinity") << "\n";
    return kOk;
  }

  if (o.command == "gr") {
    HomologyFiltration<F> filt(kc);
    const auto g = gr_homology(filt);
    Json dims = Json::object();
    for (int i = 0; i <= n; ++i) {
      Json row = Json::object();
      if (!o.json) out << "gr H_" << i << ":";
      for (auto [l, d] : g.dims[i]) {
        row[std::to_string(l)] = d;
        if (!o.json) out << " F" << l << "/F" << l + 1 << "=" << d;
      }
      if (!o.json) out << "\n";
      dims[std::to_string(i)] = std::move(row);
    }
    Json prods = Json::array();
    for (const auto& p : g.products)
      if (p.nonzero_in_gr) {
        prods.push_back({{"i", p.i}, {"j", p.j}, {"a", p.a}, {"b", p.b}, {"level", p.level_product}});
        if (!o.json)
          out << "gr product nonzero: H_" << p.i << "[" << p.a << "] * H_" << p.j << "[" << p.b << "] at level "
              << p.level_product << "\n";
      }
    if (o.json)
      dump({{"dims", dims}, {"nonzero_products", prods}, {"multiplicative", g.multiplicative},
            {"positive_products_vanish", g.positive_products_vanish()}});
    else out << "positive products vanish in gr: " << (g.positive_products_vanish() ? "true" : "false") << "\n";
    return kOk;
  }

  if (o.command == "suite") {
    dump(suite_json(kc, run_suite(kc)));
    return kOk;
  }
  throw ValidationError("unknown command '" + o.command + "'");
}

/// Entry point of the dgkoszul tool; returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Koszul homology and the action of dg-algebra automorphisms on it"};
  app.require_subcommand(1);
  Options o;
  std::string degrees;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"betti", "Betti table of Koszul homology"},
      {"homology", "dimensions and representative cycles"},
      {"products", "vanishing of H_i * H_j with nonzero witnesses"},
      {"check-identity", "do all automorphisms induce the identity on homology"},
      {"lift-action", "maps induced by the lift in --lift"},
      {"order", "order of the ring, read off the filtration of H_1"},
      {"gr", "associated graded homology"},
      {"suite", "every check, as JSON"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--ring", o.ring_file, "ring spec (JSON)")->required();
    sub->add_option("--lift", o.lift_file, "lift file, one 'ei -> ...' line per generator");
    sub->add_option("--degrees", degrees, "comma-separated homological degrees");
    sub->add_flag("--json", o.json, "JSON output");
    sub->add_flag("--slow", o.slow, "allow large complexes");
    sub->add_option("--threads", o.threads, "worker threads (default: all cores)");
    sub->callback([&o, name = name] { o.command = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    std::stringstream ds(degrees);
    for (std::string item; std::getline(ds, item, ',');) {
      std::size_t used = 0;
      const int d = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      o.degrees.push_back(d);
    }
  } catch (const std::logic_error&) {
    err << "error: --degrees expects a comma-separated list of integers\n";
    return kInputError;
  }

  try {
    const auto spec = parse_ring_spec(read_file(o.ring_file));
    return std::visit(
        [&](const auto& field) { return run_command(build_ring(spec, field), o, out); }, field_of(spec.field));
  } catch (const TruncationError& e) {
    err << "error: " << e.what() << "\n";
    return kResourceError;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kResourceError;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kResourceError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace dgk::cli
