/**
 * Reading the shipped figure recipes.
 *
 * A recipe is an INI file with a `[figure]` section carrying the plot id
 * and title; the remaining sections are consumed verbatim by the eeesim
 * CLI via `--config`, so this module never interprets them.
 */

import { readFileSync } from "node:fs";
import { join } from "node:path";
import ini from "ini";

export class RecipeError extends Error {}

export interface Recipe {
  /** Figure identifier, e.g. "fig4". */
  id: string;
  /** Human-readable title used as the chart heading. */
  title: string;
  /** Absolute path of the recipe file, passed to the CLI as --config. */
  path: string;
  /** Section names other than [figure]. */
  sections: string[];
}

export function parseRecipe(text: string, path: string): Recipe {
  const data = ini.parse(text);
  const figure = data["figure"];
  if (typeof figure !== "object" || figure === null) {
    throw new RecipeError(`${path}: no [figure] section`);
  }
  const id = figure["id"];
  const title = figure["title"];
  if (typeof id !== "string" || id === "") {
    throw new RecipeError(`${path}: [figure] section has no id`);
  }
  if (typeof title !== "string" || title === "") {
    throw new RecipeError(`${path}: [figure] section has no title`);
  }
  const sections = Object.keys(data).filter(
    (k) => k !== "figure" && typeof data[k] === "object",
  );
  return { id, title, path, sections };
}

export function loadRecipe(recipesDir: string, figureId: string): Recipe {
  const path = join(recipesDir, `${figureId}.ini`);
  const recipe = parseRecipe(readFileSync(path, "utf-8"), path);
  if (recipe.id !== figureId) {
    throw new RecipeError(
      `${path}: [figure] id is ${JSON.stringify(recipe.id)}, ` +
        `expected ${JSON.stringify(figureId)}`,
    );
  }
  return recipe;
}
