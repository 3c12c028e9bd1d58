export {
  CsvSchemaError,
  SUPPORTED_SCHEMA_VERSION,
  bool,
  distinct,
  num,
  parseTable,
  reqNum,
  type Row,
  type Table,
} from "./csv.js";
export { RecipeError, loadRecipe, parseRecipe, type Recipe } from "./recipe.js";
export {
  CliError,
  eeesimCommand,
  generateFigureData,
  runEeesim,
  type DataJob,
} from "./runner.js";
export { FIGURES, FIGURE_IDS, fmtTime, PALETTE, type FigureSpec } from "./figures.js";
export {
  DEFAULT_HEIGHT,
  DEFAULT_WIDTH,
  canonicalizeSvg,
  renderSvg,
} from "./render.js";
export { renderFigure, type RenderResult } from "./main.js";
