/**
 * Server-side SVG rendering with deterministic output.
 *
 * The chart engine numbers its generated ids and class names with global
 * process-wide counters, so two renders of the same option differ in those
 * tokens alone. `canonicalizeSvg` renumbers them by first appearance,
 * making equal inputs produce byte-equal SVGs.
 */

import * as echarts from "echarts";
import type { EChartsOption } from "echarts";

export const DEFAULT_WIDTH = 960;
export const DEFAULT_HEIGHT = 620;

export function canonicalizeSvg(svg: string): string {
  const map = new Map<string, string>();
  const counters = new Map<string, number>();
  return svg.replace(/zr\d+-([A-Za-z]+-?)(\d+)/g, (token, kind: string) => {
    let canon = map.get(token);
    if (canon === undefined) {
      const n = counters.get(kind) ?? 0;
      counters.set(kind, n + 1);
      canon = `zr-${kind}${n}`;
      map.set(token, canon);
    }
    return canon;
  });
}

export function renderSvg(
  option: EChartsOption,
  width: number = DEFAULT_WIDTH,
  height: number = DEFAULT_HEIGHT,
): string {
  const chart = echarts.init(null, null, {
    renderer: "svg",
    ssr: true,
    width,
    height,
  });
  try {
    chart.setOption({ animation: false, ...option });
    return canonicalizeSvg(chart.renderToSVGString());
  } finally {
    chart.dispose();
  }
}
