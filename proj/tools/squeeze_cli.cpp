// command line front end: certified squeezing-function bounds, limit scans,
// contact frames and certificate replay for convex domains in C^n

#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "squeeze/certificate.hpp"
#include "squeeze/convex_pipeline.hpp"
#include "squeeze/errors.hpp"
#include "squeeze/frame.hpp"
#include "squeeze/strict_pipeline.hpp"

namespace {

using namespace squeeze;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// "re,im;re,im;..." with whitespace tolerated; a bare "re" means im = 0
double parse_number(const std::string& text) {
  std::size_t used = 0;
  const double v = std::stod(text, &used);
  while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used])))
    ++used;
  if (used != text.size()) throw InvalidInput("trailing junk in number '" + text + "'");
  return v;
}

CVec parse_point(const std::string& text) {
  std::vector<cplx> coords;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';')) {
    const auto comma = part.find(',');
    try {
      const double re = parse_number(part.substr(0, comma));
      const double im =
          comma == std::string::npos ? 0.0 : parse_number(part.substr(comma + 1));
      coords.emplace_back(re, im);
    } catch (const InvalidInput&) {
      throw;
    } catch (const std::exception&) {
      throw InvalidInput("cannot parse point component '" + part + "'");
    }
  }
  if (coords.empty()) throw InvalidInput("empty point literal");
  CVec z(Eigen::Index(coords.size()));
  for (std::size_t i = 0; i < coords.size(); ++i) z[Eigen::Index(i)] = coords[i];
  return z;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      out.push_back(std::stod(part));
    } catch (const std::exception&) {
      throw InvalidInput("cannot parse number '" + part + "'");
    }
  }
  return out;
}

nlohmann::json point_json(const CVec& z) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < z.size(); ++i)
    a.push_back({z[i].real(), z[i].imag()});
  return a;
}

void print_certificate_summary(const BoundCertificate& cert) {
  std::cout << "pipeline " << cert.pipeline << "\n";
  std::cout << "bound " << fmt17(cert.bound) << "\n";
  std::cout << "inner_radius " << fmt17(cert.inner_radius) << "\n";
  std::cout << "outer_radius " << fmt17(cert.outer_radius) << "\n";
}

void emit_certificate(const BoundCertificate& cert, const std::string& out_path,
                      bool as_json) {
  if (!out_path.empty()) cert.save(out_path);
  if (as_json)
    std::cout << cert.to_json().dump(2) << "\n";
  else
    print_certificate_summary(cert);
}

void write_scan_csv(std::ostream& os, const LimitScanResult& res) {
  os << "t,lambda_q,r_in,r_out,bound\n";
  for (const auto& row : res.rows)
    os << fmt17(row.t) << ',' << fmt17(row.lambda_q) << ',' << fmt17(row.r_in)
       << ',' << fmt17(row.r_out) << ',' << fmt17(row.bound) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified lower bounds for the squeezing function of convex "
               "domains in C^n"};
  app.require_subcommand(1);

  std::string domain_path, point_text, out_path, csv_path, cert_path;
  std::string ts_text, drift_text;
  std::uint64_t seed = 1;
  std::size_t directions = 0;
  double drift_coeff = 0.0, drift_exponent = 1.0;
  std::size_t sphere_samples = 10000, boundary_samples = 10000;
  std::uint64_t verify_seed = 0xfeedULL;
  bool as_json = false;

  auto* convex = app.add_subcommand("bound-convex",
                                    "bound at a point of a bounded convex "
                                    "domain (contact-frame pipeline)");
  convex->add_option("--domain", domain_path, "domain JSON file")->required();
  convex->add_option("--point", point_text, "base point, e.g. '0.1,0;0,0.2'")
      ->required();
  convex->add_option("--seed", seed, "sampling seed");
  convex->add_option("--directions", directions,
                     "inner-radius directions (0: dimension default)");
  convex->add_option("--out", out_path, "write the certificate JSON here");
  convex->add_flag("--json", as_json, "print the certificate JSON to stdout");

  auto* strict = app.add_subcommand("bound-strict",
                                    "bound at a point of a smooth strongly "
                                    "convex domain (boundary-contact dilation "
                                    "pipeline)");
  strict->add_option("--domain", domain_path, "domain JSON file")->required();
  strict->add_option("--point", point_text, "base point")->required();
  strict->add_option("--seed", seed, "sampling seed");
  strict->add_option("--directions", directions,
                     "inner-radius directions (0: dimension default)");
  strict->add_option("--out", out_path, "write the certificate JSON here");
  strict->add_flag("--json", as_json, "print the certificate JSON to stdout");

  auto* scan = app.add_subcommand("limit-scan",
                                  "strict bounds along a path approaching a "
                                  "boundary point");
  scan->add_option("--domain", domain_path, "domain JSON file")->required();
  scan->add_option("--boundary-point", point_text, "boundary point")->required();
  scan->add_option("--ts", ts_text, "comma-separated approach distances")
      ->required();
  scan->add_option("--drift", drift_text, "tangential drift direction");
  scan->add_option("--drift-coeff", drift_coeff, "drift coefficient");
  scan->add_option("--drift-exponent", drift_exponent, "drift exponent");
  scan->add_option("--seed", seed, "sampling seed");
  scan->add_option("--csv", csv_path, "write rows here instead of stdout");

  auto* frame_cmd = app.add_subcommand("frame",
                                       "boundary-contact frame at a point");
  frame_cmd->add_option("--domain", domain_path, "domain JSON file")->required();
  frame_cmd->add_option("--point", point_text, "base point")->required();
  frame_cmd->add_option("--seed", seed, "sampling seed");

  auto* verify = app.add_subcommand("verify",
                                    "replay a certificate with fresh samples");
  verify->add_option("--certificate", cert_path, "certificate JSON file")
      ->required();
  verify->add_option("--sphere-samples", sphere_samples,
                     "probes on the certified sphere");
  verify->add_option("--boundary-samples", boundary_samples,
                     "fresh boundary probes");
  verify->add_option("--seed", verify_seed, "replay seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(convex)) {
      const ConvexDomain domain = ConvexDomain::load(domain_path);
      ConvexOptions opts;
      opts.seed = seed;
      opts.directions = directions;
      const ConvexBound res = convex_bound(domain, parse_point(point_text), opts);
      emit_certificate(res.certificate, out_path, as_json);
    } else if (app.got_subcommand(strict)) {
      const ConvexDomain domain = ConvexDomain::load(domain_path);
      StrictOptions opts;
      opts.seed = seed;
      opts.inner_directions = directions;
      const StrictBound res = strict_bound(domain, parse_point(point_text), opts);
      emit_certificate(res.certificate, out_path, as_json);
    } else if (app.got_subcommand(scan)) {
      const ConvexDomain domain = ConvexDomain::load(domain_path);
      LimitScanOptions opts;
      opts.strict.seed = seed;
      if (!drift_text.empty()) opts.drift = parse_point(drift_text);
      opts.drift_coeff = drift_coeff;
      opts.drift_exponent = drift_exponent;
      const LimitScanResult res = limit_scan(domain, parse_point(point_text),
                                             parse_doubles(ts_text), opts);
      if (csv_path.empty()) {
        write_scan_csv(std::cout, res);
      } else {
        std::ofstream os(csv_path, std::ios::binary);
        if (!os) throw InvalidInput("cannot open CSV output: " + csv_path);
        write_scan_csv(os, res);
        std::cout << "final_bound " << fmt17(res.final_bound) << "\n";
      }
    } else if (app.got_subcommand(frame_cmd)) {
      const ConvexDomain domain = ConvexDomain::load(domain_path);
      const Frame fr = build_frame(domain, parse_point(point_text), seed);
      nlohmann::json j;
      j["point"] = point_json(fr.q);
      j["radii"] = std::vector<double>(fr.radii.data(),
                                       fr.radii.data() + fr.radii.size());
      j["directions"] = nlohmann::json::array();
      j["contacts"] = nlohmann::json::array();
      for (int k = 0; k < fr.vectors.cols(); ++k) {
        j["directions"].push_back(point_json(fr.vectors.col(k)));
        j["contacts"].push_back(point_json(fr.contacts[std::size_t(k)]));
      }
      std::cout << j.dump(2) << "\n";
    } else if (app.got_subcommand(verify)) {
      const BoundCertificate cert = BoundCertificate::load(cert_path);
      ReplayOptions opts;
      opts.sphere_samples = sphere_samples;
      opts.boundary_samples = boundary_samples;
      opts.seed = verify_seed;
      const ReplayReport rep = replay(cert, opts);
      if (!rep.ok) {
        std::cerr << "ReplayMismatch: " << rep.detail << "\n";
        return 3;
      }
      std::cout << "replay ok: " << rep.interior_checked << " interior and "
                << rep.boundary_checked << " boundary probes";
      if (rep.boundary_skipped_unbounded)
        std::cout << " (boundary check skipped: unbounded domain)";
      std::cout << "\nworst_boundary_norm " << fmt17(rep.worst_boundary_norm)
                << "\n";
    }
  } catch (const Error& e) {
    std::cerr << e.name() << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
