#include "hts/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hts/criteria.hpp"
#include "hts/errors.hpp"
#include "hts/oracle.hpp"
#include "hts/realize.hpp"

namespace hts::cli {

using nlohmann::ordered_json;

namespace {

ListKind parse_kind(const std::string& word) {
  if (word == "losing") return ListKind::losing;
  if (word == "score") return ListKind::score;
  throw InputError("kind must be \"losing\" or \"score\", got \"" + word + "\"");
}

template <class Json>
std::vector<int> int_array(const Json& doc, const char* key, std::size_t expected) {
  if (!doc.contains(key) || !doc[key].is_array()) throw InputError(std::string("field \"") + key + "\" must be an array");
  const auto& arr = doc[key];
  if (arr.size() != expected)
    throw InputError(std::string("field \"") + key + "\" has " + std::to_string(arr.size()) + " entries, k is " +
                     std::to_string(expected));
  std::vector<int> out;
  for (const auto& v : arr) {
    if (!v.is_number_integer()) throw InputError(std::string("field \"") + key + "\" must hold integers");
    out.push_back(v.template get<int>());
  }
  return out;
}

template <class Json>
Shape shape_of(const Json& doc) {
  if (!doc.is_object()) throw InputError("document must be a JSON object");
  if (!doc.contains("k") || !doc["k"].is_number_integer()) throw InputError("field \"k\" must be an integer");
  const auto k = doc["k"].template get<long long>();
  if (k < 1) throw InputError("field \"k\" must be at least 1");
  const auto parts = static_cast<std::size_t>(k);
  return Shape::make(int_array(doc, "n", parts), int_array(doc, "alpha", parts));
}

void finish_lists(const Shape& shape, ScoreLists& lists, bool sort) {
  if (static_cast<int>(lists.lists.size()) != shape.parts())
    throw InputError("expected " + std::to_string(shape.parts()) + " lists, got " + std::to_string(lists.lists.size()));
  if (sort)
    for (auto& list : lists.lists) std::sort(list.begin(), list.end());
  require_well_formed(shape, lists, lists.kind);
}

ordered_json wide(i128 v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return hts::to_string(v);
}

ordered_json count_json(Count c) {
  if (c.fits_u64()) return c.to_u64();
  return c.to_string();
}

void put_shape(ordered_json& doc, const Shape& shape) {
  doc["k"] = shape.parts();
  doc["n"] = shape.sizes();
  doc["alpha"] = shape.arities();
}

ordered_json vertex_json(VertexId v) { return ordered_json::array({v.part + 1, v.index + 1}); }

ordered_json check_json(const CheckResult& r) {
  ordered_json doc;
  doc["valid"] = r.valid;
  doc["equality_at_full"] = r.equality_at_full;
  doc["full"] = {{"lhs", wide(r.full_lhs)}, {"rhs", wide(r.full_rhs)}};
  if (r.violation)
    doc["violation"] = {{"p", r.violation->prefix}, {"lhs", wide(r.violation->lhs)}, {"rhs", wide(r.violation->rhs)}};
  return doc;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Instance load_instance(const std::string& path, const std::string& format, bool sort) {
  const std::string text = read_file(path);
  return format == "text" ? parse_instance_text(text, sort) : parse_instance_json(text, sort);
}

ordered_json parse_json(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

void emit(std::ostream& out, const ordered_json& doc) { out << doc.dump(2) << '\n'; }

void put_witness(ordered_json& doc, const Hypertournament& m, const std::string& emit_mode) {
  ordered_json arr = ordered_json::array();
  for (const Arc& arc : m.arcs()) {
    if (emit_mode == "losers") {
      arr.push_back(vertex_json(arc.loser()));
    } else {
      ordered_json a = ordered_json::array();
      for (VertexId v : arc.order) a.push_back(vertex_json(v));
      arr.push_back(std::move(a));
    }
  }
  doc[emit_mode == "losers" ? "losers" : "arcs"] = std::move(arr);
}

struct Options {
  std::string file;
  std::string format = "json";
  bool sort = false;
  int jobs = 1;
  std::string method = "inductive";
  std::string emit_mode = "arcs";
  std::vector<int> n;
  std::vector<int> alpha;
  std::string kind = "losing";
  std::uint64_t budget = kDefaultEnumerationBudget;
  std::uint64_t seed = 0;
  std::string mode = "loser";
};

int cmd_check(const Options& o, std::ostream& out, std::ostream&) {
  const Instance inst = load_instance(o.file, o.format, o.sort);
  const CheckOptions opts{.prune = true, .jobs = o.jobs};
  const CheckResult r = inst.lists.kind == ListKind::losing ? check_losing_lists(inst.shape, inst.lists, opts)
                                                            : check_score_lists(inst.shape, inst.lists, opts);
  ordered_json doc;
  doc["command"] = "check";
  put_shape(doc, inst.shape);
  doc["kind"] = to_string(inst.lists.kind);
  doc.update(check_json(r));
  emit(out, doc);
  return r.valid ? kOk : kPredicateInvalid;
}

int cmd_realize(const Options& o, std::ostream& out, std::ostream& err) {
  const Instance inst = load_instance(o.file, o.format, o.sort);
  ScoreLists losing = inst.lists;
  ordered_json doc;
  doc["command"] = "realize";
  doc["method"] = o.method;
  put_shape(doc, inst.shape);
  if (inst.lists.kind == ListKind::score) {
    losing = scores_to_losing(inst.shape, inst.lists);
    doc["converted_from"] = "score";
    err << "note: score lists converted to losing score lists before realization\n";
  }
  doc["expected_losing"] = losing.lists;

  const CheckResult check = check_losing_lists(inst.shape, losing, {.prune = true, .jobs = o.jobs});
  if (!check.valid) {
    doc.update(check_json(check));
    emit(out, doc);
    return kPredicateInvalid;
  }
  try {
    const Hypertournament m =
        o.method == "flow" ? realize_flow(inst.shape, losing) : realize_inductive(inst.shape, losing);
    put_witness(doc, m, o.emit_mode);
  } catch (const Infeasible& e) {
    doc["valid"] = false;
    doc["error"] = e.what();
    emit(out, doc);
    return kPredicateInvalid;
  }
  emit(out, doc);
  return kOk;
}

/// Witness document to a dense table. Arcs are placed by their vertex set,
/// losers by position; anything unplaceable becomes a document issue.
struct LoadedWitness {
  std::optional<Hypertournament> m;
  ordered_json issues = ordered_json::array();
};

VertexId vertex_from(const ordered_json& v, const Shape& shape) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer())
    throw InputError("vertices must be [part, index] integer pairs");
  VertexId id{v[0].get<int>() - 1, v[1].get<int>() - 1};
  if (id.part < 0 || id.part >= shape.parts() || id.index < 0 || id.index >= shape.size(id.part))
    throw InputError("vertex [" + std::to_string(id.part + 1) + ", " + std::to_string(id.index + 1) +
                     "] is outside the shape");
  return id;
}

void add_issue(ordered_json& issues, const std::string& kind, std::size_t position, const std::string& detail) {
  issues.push_back({{"kind", kind}, {"position", position}, {"detail", detail}});
}

LoadedWitness load_witness(const ordered_json& doc, const Shape& shape) {
  LoadedWitness w;
  const std::size_t total = dense_arc_count(shape);
  std::vector<Arc> arcs(total);
  if (doc.contains("arcs")) {
    if (!doc["arcs"].is_array()) throw InputError("field \"arcs\" must be an array");
    const auto& list = doc["arcs"];
    for (std::size_t pos = 0; pos < list.size(); ++pos) {
      if (!list[pos].is_array()) throw InputError("each arc must be an array of vertices");
      Arc arc;
      try {
        for (const auto& v : list[pos]) arc.order.push_back(vertex_from(v, shape));
      } catch (const InputError& e) {
        add_issue(w.issues, "out_of_range", pos, e.what());
        continue;
      }
      Selection sel(static_cast<std::size_t>(shape.parts()));
      for (VertexId v : arc.order) sel[static_cast<std::size_t>(v.part)].push_back(v.index);
      for (auto& s : sel) std::sort(s.begin(), s.end());
      Count rank;
      try {
        rank = selection_rank(sel, shape);
      } catch (const InputError& e) {
        add_issue(w.issues, "arity", pos, std::string("arc is not a selection: ") + e.what());
        continue;
      }
      auto& slot = arcs[static_cast<std::size_t>(rank.to_u64())];
      if (!slot.empty()) {
        add_issue(w.issues, "duplicate_selection", pos, "a second arc for selection rank " + rank.to_string());
        continue;
      }
      slot = std::move(arc);
    }
  } else if (doc.contains("losers")) {
    if (!doc["losers"].is_array()) throw InputError("field \"losers\" must be an array");
    const auto& list = doc["losers"];
    SelectionCursor cursor(shape);
    for (std::size_t pos = 0; pos < list.size(); ++pos, cursor.advance()) {
      if (pos >= total) {
        add_issue(w.issues, "extra", pos, "more losers than selections");
        continue;
      }
      try {
        arcs[pos] = canonical_arc(cursor.selection(), vertex_from(list[pos], shape));
      } catch (const InputError& e) {
        add_issue(w.issues, "mismatch", pos, e.what());
      }
    }
  } else {
    throw InputError("witness needs an \"arcs\" or \"losers\" field");
  }
  w.m.emplace(shape, std::move(arcs));
  return w;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream&) {
  const ordered_json in = parse_json(read_file(o.file));
  const Shape shape = shape_of(in);
  LoadedWitness w = load_witness(in, shape);
  const Hypertournament& m = *w.m;

  ordered_json doc;
  doc["command"] = "verify";
  put_shape(doc, shape);
  ordered_json issues = w.issues;
  for (const auto& issue : validate(m).issues)
    issues.push_back({{"kind", to_string(issue.kind)}, {"rank", issue.rank}, {"detail", issue.detail}});
  const bool structural = issues.empty();
  doc["structurally_valid"] = structural;
  doc["issues"] = issues;
  bool ok = structural;
  if (structural) {
    const ScoreLists losing = losing_scores(m, o.jobs);
    const ScoreLists score = scores(m, o.jobs);
    doc["losing"] = losing.lists;
    doc["score"] = score.lists;
    i128 losing_total = 0;
    i128 score_total = 0;
    for (const auto& l : losing.lists)
      for (Score v : l) losing_total += v;
    for (const auto& l : score.lists)
      for (Score v : l) score_total += v;
    const Count arcs = shape.total_arcs();
    doc["totals"] = {{"arcs", count_json(arcs)},
                     {"losing", wide(losing_total)},
                     {"score", wide(score_total)},
                     {"expected_score", count_json(Count(static_cast<std::uint64_t>(shape.arc_length() - 1)) * arcs)}};
    if (in.contains("expected_losing")) {
      ScoreLists expected{ListKind::losing, {}};
      try {
        expected.lists = in["expected_losing"].get<std::vector<ScoreList>>();
      } catch (const nlohmann::json::exception&) {
        throw InputError("field \"expected_losing\" must be a list of integer lists");
      }
      const bool matches = expected.lists == losing.lists;
      doc["matches_expected"] = matches;
      ok = ok && matches;
    }
  }
  emit(out, doc);
  return ok ? kOk : kPredicateInvalid;
}

int cmd_convert(const Options& o, std::ostream& out, std::ostream& err) {
  const Instance inst = load_instance(o.file, o.format, o.sort);
  const ScoreLists converted = inst.lists.kind == ListKind::losing ? losing_to_scores(inst.shape, inst.lists)
                                                                   : scores_to_losing(inst.shape, inst.lists);
  ordered_json doc;
  put_shape(doc, inst.shape);
  doc["kind"] = to_string(converted.kind);
  doc["lists"] = converted.lists;
  err << "note: converted " << to_string(inst.lists.kind) << " lists to " << to_string(converted.kind) << " lists\n";
  emit(out, doc);
  return kOk;
}

int cmd_enumerate(const Options& o, std::ostream& out, std::ostream&) {
  const Shape shape = Shape::make(o.n, o.alpha);
  const ListKind kind = parse_kind(o.kind);
  const EnumerationOptions opts{o.budget, o.jobs};
  const AchievableSet set =
      kind == ListKind::losing ? achievable_losing_lists(shape, opts) : achievable_score_lists(shape, opts);
  ordered_json doc;
  doc["command"] = "enumerate";
  put_shape(doc, shape);
  doc["kind"] = to_string(kind);
  doc["assignments"] = count_json(set.assignment_count);
  doc["count"] = set.lists.size();
  ordered_json lists = ordered_json::array();
  for (const auto& tuple : set.lists) lists.push_back(tuple);
  doc["lists"] = std::move(lists);
  emit(out, doc);
  return kOk;
}

int cmd_random(const Options& o, std::ostream& out, std::ostream&) {
  const Shape shape = Shape::make(o.n, o.alpha);
  const RandomMode mode = o.mode == "full" ? RandomMode::full_permutation : RandomMode::loser_only;
  const Hypertournament m = random_hypertournament(shape, o.seed, mode);
  ordered_json doc;
  doc["command"] = "random";
  put_shape(doc, shape);
  doc["seed"] = o.seed;
  doc["mode"] = o.mode;
  doc["expected_losing"] = losing_scores(m, o.jobs).lists;
  put_witness(doc, m, o.emit_mode);
  emit(out, doc);
  return kOk;
}

}  // namespace

Instance parse_instance_json(std::string_view text, bool sort) {
  const ordered_json doc = parse_json(std::string(text));
  Shape shape = shape_of(doc);
  if (!doc.contains("kind") || !doc["kind"].is_string()) throw InputError("field \"kind\" must be a string");
  ScoreLists lists{parse_kind(doc["kind"].get<std::string>()), {}};
  if (!doc.contains("lists") || !doc["lists"].is_array()) throw InputError("field \"lists\" must be an array");
  for (const auto& list : doc["lists"]) {
    if (!list.is_array()) throw InputError("each entry of \"lists\" must be an array");
    ScoreList values;
    for (const auto& v : list) {
      if (!v.is_number_integer()) throw InputError("list entries must be integers");
      values.push_back(v.get<Score>());
    }
    lists.lists.push_back(std::move(values));
  }
  finish_lists(shape, lists, sort);
  return {std::move(shape), std::move(lists)};
}

Instance parse_instance_text(std::string_view text, bool sort) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    lines.push_back(line);
  }
  if (lines.empty()) throw InputError("text instance is empty");

  std::istringstream header(lines.front());
  long long k = 0;
  if (!(header >> k) || k < 1) throw InputError("header must start with k >= 1");
  std::vector<int> n(static_cast<std::size_t>(k));
  std::vector<int> alpha(static_cast<std::size_t>(k));
  for (auto& v : n)
    if (!(header >> v)) throw InputError("header is missing part sizes");
  for (auto& v : alpha)
    if (!(header >> v)) throw InputError("header is missing arities");
  std::string kind_word = "losing";
  header >> kind_word;
  std::string trailing;
  if (header >> trailing) throw InputError("unexpected token \"" + trailing + "\" in header");

  Shape shape = Shape::make(std::move(n), std::move(alpha));
  ScoreLists lists{parse_kind(kind_word), {}};
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream row(lines[i]);
    ScoreList values;
    std::string token;
    while (row >> token) {
      try {
        std::size_t used = 0;
        values.push_back(std::stoll(token, &used));
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw InputError("not an integer: \"" + token + "\"");
      }
    }
    lists.lists.push_back(std::move(values));
  }
  finish_lists(shape, lists, sort);
  return {std::move(shape), std::move(lists)};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Score lists of multipartite hypertournaments: check, realize, verify, convert, enumerate."};
  app.require_subcommand(1);
  Options o;

  auto add_instance = [&](CLI::App* sub) {
    sub->add_option("file", o.file, "Instance document")->required();
    sub->add_option("--format", o.format, "Instance format")->check(CLI::IsMember({"json", "text"}));
    sub->add_flag("--sort", o.sort, "Sort unsorted lists instead of rejecting them");
  };
  auto add_shape = [&](CLI::App* sub) {
    sub->add_option("--n", o.n, "Part sizes, comma separated")->required()->delimiter(',');
    sub->add_option("--alpha", o.alpha, "Arities, comma separated")->required()->delimiter(',');
  };

  auto* check = app.add_subcommand("check", "Decide whether lists are (losing) score lists");
  add_instance(check);
  check->add_option("--jobs", o.jobs, "Worker threads");

  auto* realize = app.add_subcommand("realize", "Construct a witness hypertournament");
  add_instance(realize);
  realize->add_option("--method", o.method, "Construction")->check(CLI::IsMember({"inductive", "flow"}));
  realize->add_option("--emit", o.emit_mode, "Witness form")->check(CLI::IsMember({"losers", "arcs"}));
  realize->add_option("--jobs", o.jobs, "Worker threads");

  auto* verify = app.add_subcommand("verify", "Validate a witness and recompute its lists");
  verify->add_option("file", o.file, "Witness document")->required();
  verify->add_option("--jobs", o.jobs, "Worker threads");

  auto* convert = app.add_subcommand("convert", "Map score lists to losing score lists and back");
  add_instance(convert);

  auto* enumerate = app.add_subcommand("enumerate", "List every achievable list tuple of a shape");
  add_shape(enumerate);
  enumerate->add_option("--kind", o.kind, "Which lists")->check(CLI::IsMember({"losing", "score"}));
  enumerate->add_option("--budget", o.budget, "Maximum number of loser assignments");
  enumerate->add_option("--jobs", o.jobs, "Worker threads");

  auto* random = app.add_subcommand("random", "Generate a seeded random hypertournament");
  add_shape(random);
  random->add_option("--seed", o.seed, "Generator seed")->required();
  random->add_option("--mode", o.mode, "Loser only or full arc order")->check(CLI::IsMember({"loser", "full"}));
  random->add_option("--emit", o.emit_mode, "Witness form")->check(CLI::IsMember({"losers", "arcs"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (check->parsed()) return cmd_check(o, out, err);
    if (realize->parsed()) return cmd_realize(o, out, err);
    if (verify->parsed()) return cmd_verify(o, out, err);
    if (convert->parsed()) return cmd_convert(o, out, err);
    if (enumerate->parsed()) return cmd_enumerate(o, out, err);
    if (random->parsed()) return cmd_random(o, out, err);
  } catch (const InvalidLists& e) {
    err << "error: " << e.what() << '\n';
    return kPredicateInvalid;
  } catch (const RealizationGap& e) {
    err << "error: " << e.what() << '\n';
    return kRealizationGap;
  } catch (const NoValidStep& e) {
    err << "error: " << e.what() << '\n';
    return kRealizationGap;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kResourceLimit;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return kResourceLimit;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const StructuralError& e) {
    err << "error: " << e.what() << '\n';
    return kPredicateInvalid;
  }
  return kInputError;
}

}  // namespace hts::cli
