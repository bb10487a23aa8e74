// Copyright 2026 The Bratteli Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// bratteli: command-line front end for the ordered graded graph toolkit.
//
// Exit codes: 0 success, 1 domain error or failed check, 2 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "bratteli/adic.hpp"
#include "bratteli/builders.hpp"
#include "bratteli/coloring.hpp"
#include "bratteli/error.hpp"
#include "bratteli/graph.hpp"
#include "bratteli/measures.hpp"
#include "bratteli/rational.hpp"
#include "bratteli/scheme.hpp"
#include "bratteli/trees.hpp"
#include "bratteli/uniadic.hpp"

namespace {

using namespace bratteli;

constexpr int kUsageExit = 2;
constexpr int kFailExit = 1;

std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), {}};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << text;
  if (!out.flush()) throw Error("failed writing '" + path + "'");
}

GradedGraph load_graph(const std::string& path) {
  try {
    return deserialize(read_input(path));
  } catch (const ParseError& e) {
    throw Error(path + ": " + e.what());
  }
}

CentralWeights load_weights(const std::string& path) {
  try {
    return deserialize_weights(read_input(path));
  } catch (const ParseError& e) {
    throw Error(path + ": " + e.what());
  }
}

std::string render_graph(const GradedGraph& graph, const std::string& format) {
  return format == "dot" ? to_dot(graph) : serialize(graph);
}

std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    unsigned long long value = 0;
    try {
      value = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw Error("bad index '" + item + "' in '" + text + "'");
    out.push_back(static_cast<std::size_t>(value));
  }
  return out;
}

// Every subcommand registers its flags here and stores a runner that executes
// after parsing.
struct Command {
  CLI::App* app = nullptr;
  std::function<int()> run;
};

void add_format_option(CLI::App* cmd, std::string& format) {
  cmd->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "dot"}))
      ->capture_default_str();
}

Command make_gen(CLI::App& app) {
  struct Opts {
    std::string kind = "odometer";
    std::size_t depth = 4;
    BuilderSpec spec;
    std::string p = "1/2";
    std::string out, weights_out, format = "json";
    bool float_weights = false;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("gen", "Build an example graph");
  cmd->add_option("--kind", o->kind, "odometer | pascal | doubled_odometer | random")
      ->required();
  cmd->add_option("--depth", o->depth, "Number of levels above the root")->required();
  cmd->add_option("--base", o->spec.base, "Odometer edge multiplicity")->capture_default_str();
  cmd->add_option("--seed", o->spec.seed, "Random graph seed")->capture_default_str();
  cmd->add_option("--max-vertices", o->spec.max_vertices, "Random: vertices per level cap")
      ->capture_default_str();
  cmd->add_option("--min-in", o->spec.min_in_degree, "Random: minimum in-degree")
      ->capture_default_str();
  cmd->add_option("--max-in", o->spec.max_in_degree, "Random: maximum in-degree")
      ->capture_default_str();
  cmd->add_option("--p", o->p, "Pascal weight parameter (rational)")->capture_default_str();
  cmd->add_option("--out", o->out, "Graph output file (default stdout)");
  cmd->add_option("--weights", o->weights_out, "Also write default weights to this file");
  cmd->add_flag("--float", o->float_weights, "Write weights in float mode");
  add_format_option(cmd, o->format);
  return {cmd, [o] {
            o->spec.kind = parse_builder_kind(o->kind);
            o->spec.depth = o->depth;
            const GradedGraph graph = build(o->spec);
            write_output(o->out, render_graph(graph, o->format));
            if (!o->weights_out.empty()) {
              ExactWeights w = default_weights(o->spec, graph, parse_rational(o->p));
              const CentralWeights cw = o->float_weights ? CentralWeights(to_float(w))
                                                         : CentralWeights(std::move(w));
              write_output(o->weights_out, serialize_weights(cw));
            }
            return 0;
          }};
}

Command make_validate(CLI::App& app) {
  auto in = std::make_shared<std::string>();
  auto* cmd = app.add_subcommand("validate", "Check a graph file against all invariants");
  cmd->add_option("--in", *in, "Graph file ('-' for stdin)")->required();
  return {cmd, [in] {
            const LevelList levels = deserialize_levels(read_input(*in));
            const auto diags = validate(levels);
            if (diags.empty()) {
              const GradedGraph g(levels);
              std::cout << "ok: " << g.num_levels() << " levels, " << g.num_vertices()
                        << " vertices\n";
              return 0;
            }
            for (const auto& d : diags) {
              std::cout << to_string(d.kind) << " " << to_string(d.vertex) << ": " << d.message
                        << "\n";
            }
            return kFailExit;
          }};
}

Command make_ua(CLI::App& app) {
  struct Opts {
    std::size_t depth = 3;
    std::string format = "json", out;
    bool dot = false, json = false;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("ua", "Emit the uniadic graph up to a depth");
  cmd->add_option("--depth", o->depth, "Top level")->required();
  auto* dot = cmd->add_flag("--dot", o->dot, "Same as --format dot");
  cmd->add_flag("--json", o->json, "Same as --format json")->excludes(dot);
  cmd->add_option("--out", o->out, "Output file (default stdout)");
  add_format_option(cmd, o->format);
  return {cmd, [o] {
            const std::string format = o->dot ? "dot" : o->json ? "json" : o->format;
            write_output(o->out, render_graph(ua_graph(o->depth).graph, format));
            return 0;
          }};
}

Command make_embed(CLI::App& app) {
  auto in = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>();
  auto* cmd = app.add_subcommand("embed", "Embed a graph into the uniadic graph");
  cmd->add_option("--in", *in, "Graph file")->required();
  cmd->add_option("--out", *out, "Embedding file (default stdout)");
  return {cmd, [in, out] {
            write_output(*out, serialize_embedding(embed(load_graph(*in))));
            return 0;
          }};
}

Command make_verify(CLI::App& app) {
  auto in = std::make_shared<std::string>();
  auto emb = std::make_shared<std::string>();
  auto* cmd = app.add_subcommand("verify", "Verify an embedding against its source graph");
  cmd->add_option("--in", *in, "Source graph file")->required();
  cmd->add_option("--embedding", *emb, "Embedding file")->required();
  return {cmd, [in, emb] {
            const GradedGraph graph = load_graph(*in);
            const EmbeddingResult result = deserialize_embedding(read_input(*emb));
            const VerificationReport report = verify_embedding(graph, result);
            if (report.ok) {
              std::cout << "ok: " << result.layered.num_levels() << " layers, schedule";
              for (std::size_t s : result.schedule) std::cout << " " << s;
              std::cout << "\n";
              return 0;
            }
            for (const auto& p : report.problems) std::cout << p << "\n";
            return kFailExit;
          }};
}

Command make_telescope(CLI::App& app) {
  struct Opts {
    std::string in, levels, out, format = "json";
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("telescope", "Contract a graph to a subsequence of levels");
  cmd->add_option("--in", o->in, "Graph file")->required();
  cmd->add_option("--levels", o->levels, "Kept levels, e.g. 0,2,4")->required();
  cmd->add_option("--out", o->out, "Output file (default stdout)");
  add_format_option(cmd, o->format);
  return {cmd, [o] {
            const auto kept = parse_index_list(o->levels);
            write_output(o->out, render_graph(telescope(load_graph(o->in), kept), o->format));
            return 0;
          }};
}

Command make_quotient(CLI::App& app) {
  struct Opts {
    std::string in, out, format = "json";
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("quotient", "Emit the minimal quotient of a graph");
  cmd->add_option("--in", o->in, "Graph file")->required();
  cmd->add_option("--out", o->out, "Output file (default stdout)");
  add_format_option(cmd, o->format);
  return {cmd, [o] {
            const GradedGraph g = load_graph(o->in);
            write_output(o->out,
                         render_graph(minimal_quotient(g, g.num_levels() - 1).graph, o->format));
            return 0;
          }};
}

Command make_trees(CLI::App& app) {
  struct Opts {
    std::string in;
    std::optional<std::size_t> level;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("trees", "Print the ordered-tree key of every vertex");
  cmd->add_option("--in", o->in, "Graph file")->required();
  cmd->add_option("--level", o->level, "Only this level");
  return {cmd, [o] {
            const GradedGraph g = load_graph(o->in);
            const std::size_t top = g.num_levels() - 1;
            if (o->level && *o->level > top) {
              throw Error("level " + std::to_string(*o->level) + " exceeds top level " +
                          std::to_string(top));
            }
            const TreeIndex index(g, top);
            const std::size_t lo = o->level.value_or(0);
            const std::size_t hi = o->level.value_or(top);
            for (std::size_t n = lo; n <= hi; ++n) {
              for (std::size_t i = 0; i < g.level_size(n); ++i) {
                std::cout << "L" << n << "_" << i << " " << index.key({n, i}) << "\n";
              }
            }
            const MinimalityReport report = is_minimal(g, hi);
            std::cout << "minimal: " << (report.minimal ? "yes" : "no");
            if (report.witness) {
              std::cout << " (L" << report.witness->level << "_" << report.witness->first
                        << " ~ L" << report.witness->level << "_" << report.witness->second << ")";
            }
            std::cout << "\n";
            return 0;
          }};
}

Command make_shift(CLI::App& app) {
  struct Opts {
    std::string in, path;
    bool backward = false;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("shift", "Apply the adic shift to a path");
  cmd->add_option("--in", o->in, "Graph file")->required();
  cmd->add_option("--path", o->path, "Path ranks, e.g. 0,1,1 (suffix @k for the endpoint)")
      ->required();
  cmd->add_flag("--backward", o->backward, "Apply the inverse shift");
  return {cmd, [o] {
            const GradedGraph g = load_graph(o->in);
            const PathPrefix p = parse_path(g, o->path);
            const auto next = o->backward ? predecessor(g, p) : successor(g, p);
            if (!next) {
              throw Error("path " + format_path(g, p) + " is " +
                          (o->backward ? "minimal" : "maximal") + "; shift undefined");
            }
            std::cout << format_path(g, *next) << "\n";
            return 0;
          }};
}

Command make_check(CLI::App& app) {
  struct Opts {
    std::string in, weights;
    double tol = kDefaultTolerance;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("check", "Check that weights define a central measure");
  cmd->add_option("--in", o->in, "Graph file")->required();
  cmd->add_option("--weights", o->weights, "Weights file")->required();
  cmd->add_option("--tol", o->tol, "Float-mode tolerance")->capture_default_str();
  return {cmd, [o] {
            const GradedGraph g = load_graph(o->in);
            return std::visit(
                [&](const auto& w) {
                  using Scalar = std::decay_t<decltype(w.masses[0][0])>;
                  const auto report = check_central(g, w, Scalar(o->tol));
                  const bool exact = std::is_same_v<Scalar, Rational>;
                  if (report.ok) {
                    std::cout << "central: yes (" << (exact ? "rational" : "float") << ", "
                              << w.masses.size() << " levels)\n";
                    return 0;
                  }
                  std::cout << "central: no\n";
                  for (const auto& p : report.problems) std::cout << p << "\n";
                  return kFailExit;
                },
                load_weights(o->weights));
          }};
}

Command make_sample(CLI::App& app) {
  struct Opts {
    std::string in, weights, out;
    std::size_t depth = 0, count = 1;
    std::uint64_t seed = 0;
    unsigned workers = 1;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("sample", "Sample paths from a central measure");
  cmd->add_option("--in", o->in, "Graph file")->required();
  cmd->add_option("--weights", o->weights, "Weights file")->required();
  cmd->add_option("--depth", o->depth, "Path length")->required();
  cmd->add_option("--count", o->count, "Number of paths")->capture_default_str();
  cmd->add_option("--seed", o->seed, "Seed")->capture_default_str();
  cmd->add_option("--workers", o->workers, "Worker threads")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();
  cmd->add_option("--out", o->out, "Output file (default stdout)");
  return {cmd, [o] {
            const GradedGraph g = load_graph(o->in);
            const auto paths = std::visit(
                [&](const auto& w) {
                  return PathSampler(g, w, o->depth).sample_many(o->count, o->seed, o->workers);
                },
                load_weights(o->weights));
            std::string text;
            for (const auto& p : paths) text += format_path(g, p) + "\n";
            write_output(o->out, text);
            return 0;
          }};
}

Command make_scheme(CLI::App& app) {
  struct Opts {
    std::string in, weights, out;
    std::size_t depth = 0, samples = 0;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    bool exact = false, diagnostic = false;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("scheme", "Compute the finite-depth scheme distribution");
  cmd->add_option("--in", o->in, "Graph file")->required();
  cmd->add_option("--weights", o->weights, "Weights file")->required();
  cmd->add_option("--depth", o->depth, "Cylinder depth")->required();
  auto* exact = cmd->add_flag("--exact", o->exact, "Enumerate cylinders exactly");
  auto* samples = cmd->add_option("--samples", o->samples, "Monte Carlo sample count");
  exact->excludes(samples);
  cmd->add_option("--seed", o->seed, "Seed")->capture_default_str();
  cmd->add_option("--workers", o->workers, "Worker threads")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();
  cmd->add_flag("--diagnostic", o->diagnostic, "Print the definiteness diagnostic instead");
  cmd->add_option("--out", o->out, "Output file (default stdout)");
  return {cmd, [o] {
            if (!o->exact && o->samples == 0 && !o->diagnostic) {
              throw CLI::ValidationError("scheme", "need --exact or --samples N");
            }
            const GradedGraph g = load_graph(o->in);
            const std::string text = std::visit(
                [&](const auto& w) -> std::string {
                  if (o->diagnostic) {
                    const auto d = definiteness_diagnostic(g, w, o->depth);
                    std::ostringstream os;
                    os << "depth " << d.depth << "\ncylinders " << d.cylinders
                       << "\ndistinct_keys " << d.distinct_keys << "\nresolution_ratio "
                       << to_string(d.resolution_ratio) << "\ncollision_statistic "
                       << d.collision_statistic << "\ncollision_mass " << d.collision_mass
                       << "\n";
                    return os.str();
                  }
                  if (o->exact) return serialize_scheme(exact_scheme(g, w, o->depth));
                  return serialize_scheme(
                      empirical_scheme(g, w, o->depth, o->samples, o->seed, o->workers));
                },
                load_weights(o->weights));
            write_output(o->out, text);
            return 0;
          }};
}

Command make_color(CLI::App& app) {
  struct Opts {
    std::string in, out;
    bool canonical = false, separating = false;
    std::optional<std::size_t> cut, depth;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("color", "Emit a vertex coloring");
  cmd->add_option("--in", o->in, "Graph file")->required();
  auto* canonical = cmd->add_flag("--canonical", o->canonical, "One color per vertex");
  auto* separating =
      cmd->add_flag("--separating", o->separating, "Path-truncation coloring (needs --cut)");
  canonical->excludes(separating);
  cmd->add_option("--cut", o->cut, "Truncation length for --separating")->needs(separating);
  cmd->add_option("--depth", o->depth, "Top level to color (default: all)");
  cmd->add_option("--out", o->out, "Output file (default stdout)");
  return {cmd, [o] {
            if (o->canonical == o->separating) {
              throw CLI::ValidationError("color", "need exactly one of --canonical, --separating");
            }
            if (o->separating && !o->cut) {
              throw CLI::ValidationError("color", "--separating requires --cut");
            }
            const GradedGraph g = load_graph(o->in);
            const std::size_t depth = o->depth.value_or(g.num_levels() - 1);
            const Coloring c = o->canonical ? canonical_coloring(g)
                                            : separating_coloring(g, depth, *o->cut);
            write_output(o->out, serialize_coloring(c));
            return 0;
          }};
}

Command make_check_colored(CLI::App& app) {
  struct Opts {
    std::string in, coloring;
    std::size_t depth = 0;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("check-colored", "Check colored definiteness up to a depth");
  cmd->add_option("--in", o->in, "Graph file")->required();
  cmd->add_option("--coloring", o->coloring, "Coloring file (default: canonical)");
  cmd->add_option("--depth", o->depth, "Depth")->required();
  return {cmd, [o] {
            const GradedGraph g = load_graph(o->in);
            const Coloring c = o->coloring.empty() ? canonical_coloring(g)
                                                   : deserialize_coloring(read_input(o->coloring));
            const auto report = colored_definiteness_check(g, c, o->depth);
            if (report.definite) {
              std::cout << "definite: yes\n";
              return 0;
            }
            std::cout << "definite: no\n";
            if (report.witness) {
              std::cout << "witness: " << format_path(g, report.witness->first) << " "
                        << format_path(g, report.witness->second) << "\n";
            }
            return kFailExit;
          }};
}

Command make_hierarchy(CLI::App& app) {
  struct Opts {
    std::string in, path;
    std::optional<std::size_t> depth;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("hierarchy", "Print the hierarchy on Z induced by a path");
  cmd->add_option("--in", o->in, "Graph file")->required();
  cmd->add_option("--path", o->path, "Path ranks")->required();
  cmd->add_option("--depth", o->depth, "Levels to report (default: path length)");
  return {cmd, [o] {
            const GradedGraph g = load_graph(o->in);
            const PathPrefix p = parse_path(g, o->path);
            const HierarchyPrefix h = hierarchy_of_path(g, p, o->depth.value_or(p.length()));
            for (std::size_t n = 0; n < h.levels.size(); ++n) {
              const auto& lv = h.levels[n];
              std::cout << n << ": [" << lv.interval.lo << "," << lv.interval.hi << "]";
              if (!lv.blocks.empty()) std::cout << " =";
              for (const auto& b : lv.blocks) std::cout << " [" << b.lo << "," << b.hi << "]";
              std::cout << "\n";
            }
            return 0;
          }};
}

Command make_dot(CLI::App& app) {
  auto in = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>();
  auto* cmd = app.add_subcommand("dot", "Render a graph file as Graphviz DOT");
  cmd->add_option("--in", *in, "Graph file")->required();
  cmd->add_option("--out", *out, "Output file (default stdout)");
  return {cmd, [in, out] {
            write_output(*out, to_dot(load_graph(*in)));
            return 0;
          }};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app("Ordered graded graphs: adic shifts, tree labels, central measures, "
               "schemes, colorings and the uniadic embedding");
  app.set_version_flag("--version",
                       std::string("bratteli " BRATTELI_VERSION "\nformat version ") +
                           std::to_string(kGraphFormatVersion));
  app.require_subcommand(1);

  const std::vector<Command> commands = {
      make_gen(app),      make_validate(app),  make_ua(app),
      make_embed(app),    make_verify(app),    make_telescope(app),
      make_quotient(app), make_trees(app),     make_shift(app),
      make_check(app),    make_sample(app),    make_scheme(app),
      make_color(app),    make_check_colored(app), make_hierarchy(app),
      make_dot(app),
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageExit;
  }

  try {
    for (const auto& c : commands) {
      if (c.app->parsed()) return c.run();
    }
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\nRun with --help for more information.\n";
    return kUsageExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailExit;
  }
  return kUsageExit;
}
