/** Form view-models: map engine field specs to widgets, validate input,
 * and build submission payloads that match the schema fields exactly. */

import type { FormFieldSpec, FormSpec } from "./types.js";

export type Widget = "text" | "number" | "date";

export interface FieldView {
  name: string;
  label: string;
  widget: Widget;
  readOnly: boolean;
  initial: string;
}

export interface FormView {
  fields: FieldView[];
  choices: string[];
  needsChoice: boolean;
}

const WIDGETS: Record<string, Widget> = {
  string: "text",
  integer: "number",
  date: "date",
};

export function widgetFor(fieldType: string): Widget {
  return WIDGETS[fieldType] ?? "text";
}

export function buildFormView(spec: FormSpec): FormView {
  return {
    fields: spec.fields.map((f) => ({
      name: f.name,
      label: f.displayName || f.name,
      widget: widgetFor(f.fieldType),
      readOnly: f.readOnly,
      initial: f.value === null || f.value === undefined ? "" : String(f.value),
    })),
    choices: [...spec.choices],
    needsChoice: spec.choices.length > 0,
  };
}

export interface Submission {
  values: Record<string, unknown>;
  choice: string | null;
}

export class FormValidationError extends Error {
  constructor(readonly problems: string[]) {
    super(problems.join("; "));
  }
}

/** Turn raw widget strings into a payload containing exactly the editable
 * schema fields, typed per field, plus the selected choice. */
export function buildSubmission(
  spec: FormSpec,
  raw: Record<string, string>,
  choice: string | null,
): Submission {
  const problems: string[] = [];
  const values: Record<string, unknown> = {};
  for (const field of spec.fields) {
    if (field.readOnly) continue;
    const text = (raw[field.name] ?? "").trim();
    if (text === "") {
      problems.push(`${field.displayName || field.name} is required`);
      continue;
    }
    values[field.name] = coerce(field, text, problems);
  }
  if (spec.choices.length > 0) {
    if (!choice || !spec.choices.includes(choice)) {
      problems.push(`choose one of: ${spec.choices.join(", ")}`);
    }
  } else if (choice) {
    problems.push("this task does not take a choice");
  }
  if (problems.length > 0) {
    throw new FormValidationError(problems);
  }
  return { values, choice: choice ?? null };
}

function coerce(
  field: FormFieldSpec,
  text: string,
  problems: string[],
): unknown {
  switch (field.fieldType) {
    case "integer": {
      if (!/^-?\d+$/.test(text)) {
        problems.push(`${field.displayName || field.name} must be an integer`);
        return undefined;
      }
      return parseInt(text, 10);
    }
    case "date": {
      if (!/^\d{4}-\d{2}-\d{2}$/.test(text)) {
        problems.push(
          `${field.displayName || field.name} must be a date (YYYY-MM-DD)`,
        );
        return undefined;
      }
      return text;
    }
    default:
      return text;
  }
}
