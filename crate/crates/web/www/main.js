import init, { periodic_points, order_lattice, bf_calculator } from "./pkg/bftorus_web.js";

const $ = (id) => document.getElementById(id);
const POINT_LIMIT = 20000;

function show(el, v) {
  el.className = v.error ? "err" : "";
  el.textContent = v.error ? `${v.error}: ${v.message}` : JSON.stringify(v, null, 2);
}

function plotTorus() {
  const k = Number($("pp-k").value);
  const v = JSON.parse(periodic_points($("pp-matrix").value, k, POINT_LIMIT));
  const cv = $("pp-canvas");
  const ctx = cv.getContext("2d");
  ctx.clearRect(0, 0, cv.width, cv.height);
  if (v.error) { show($("pp-out"), v); return; }
  const pts = v.points || [];
  const r = pts.length > 2000 ? 1 : 3;
  ctx.fillStyle = "#036";
  for (const [x, y] of pts) {
    ctx.beginPath();
    ctx.arc(x * cv.width, cv.height - y * cv.height, r, 0, 2 * Math.PI);
    ctx.fill();
  }
  const summary = { k: v.k, group: v.group, count: v.count, generators: v.generators };
  if (!v.points) summary.note = `more than ${POINT_LIMIT} points, not plotted`;
  else if (v.exact.length <= 30) summary.points = v.exact.map((p) => `(${p[0]}, ${p[1]})`);
  show($("pp-out"), summary);
}

function drawLattice() {
  const v = JSON.parse(order_lattice($("hd-poly").value));
  const svg = $("hd-svg");
  svg.innerHTML = "";
  if (v.error) { show($("hd-out"), v); return; }
  const ns = "http://www.w3.org/2000/svg";
  const W = Number(svg.getAttribute("width"));
  const H = Number(svg.getAttribute("height"));
  const top = Math.max(...v.levels);
  const byLevel = {};
  v.nodes.forEach((n, i) => (byLevel[v.levels[i]] ||= []).push(n.id));
  const pos = {};
  for (const [lvl, ids] of Object.entries(byLevel)) {
    ids.forEach((id, j) => {
      pos[id] = [((j + 1) * W) / (ids.length + 1), H - 30 - (Number(lvl) * (H - 60)) / Math.max(top, 1)];
    });
  }
  for (const [a, b] of v.edges) {
    const l = document.createElementNS(ns, "line");
    l.setAttribute("x1", pos[a][0]); l.setAttribute("y1", pos[a][1]);
    l.setAttribute("x2", pos[b][0]); l.setAttribute("y2", pos[b][1]);
    l.setAttribute("stroke", "#666");
    svg.appendChild(l);
  }
  for (const n of v.nodes) {
    const c = document.createElementNS(ns, "circle");
    c.setAttribute("cx", pos[n.id][0]); c.setAttribute("cy", pos[n.id][1]);
    c.setAttribute("r", 14); c.setAttribute("fill", "#def"); c.setAttribute("stroke", "#036");
    const t = document.createElementNS(ns, "text");
    t.setAttribute("x", pos[n.id][0]); t.setAttribute("y", pos[n.id][1] + 4);
    t.setAttribute("text-anchor", "middle"); t.setAttribute("font-size", "11");
    t.textContent = String(n.index);
    const tip = document.createElementNS(ns, "title");
    tip.textContent = `order ${n.id}, index ${n.index}`;
    c.appendChild(tip);
    svg.appendChild(c); svg.appendChild(t);
  }
  $("hd-out").className = "";
  $("hd-out").textContent = `${v.nodes.length} orders (labelled by index over Z[x]/(f))\n\n${v.hasse}`;
}

function computeBf() {
  show($("bf-out"), JSON.parse(bf_calculator($("bf-matrix").value, $("bf-poly").value)));
}

await init();
$("pp-run").onclick = plotTorus;
$("hd-run").onclick = drawLattice;
$("bf-run").onclick = computeBf;
plotTorus();
drawLattice();
computeBf();
