/** DOM rendering. Kept free of API calls: views take data and callbacks. */

import { buildFormView, buildSubmission, FormValidationError } from "./forms.js";
import type { InstanceStatus, ModelRecord, Task } from "./types.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className = "",
  text = "",
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text) node.textContent = text;
  return node;
}

export function renderTaskCard(
  task: Task,
  onSubmit: (values: Record<string, unknown>, choice: string | null) => void,
): HTMLElement {
  const card = el("section", "task-card");
  card.dataset.requestId = String(task.requestId);

  const banner = el("header", "task-context");
  banner.append(
    el("span", "context-instance", task.context.instanceName),
    el("span", "context-model", task.context.modelName),
    el("span", "context-subject", task.context.subjectLabel),
    el("strong", "context-state", task.context.stateLabel),
  );
  card.append(banner);

  const view = buildFormView(task.formSpec);
  const form = el("form", "task-form");
  const inputs = new Map<string, HTMLInputElement>();
  for (const field of view.fields) {
    const row = el("label", "field-row");
    row.append(el("span", "field-label", field.label));
    const input = el("input", `field-input field-${field.widget}`);
    input.type = field.widget;
    input.name = field.name;
    input.value = field.initial;
    input.readOnly = field.readOnly;
    inputs.set(field.name, input);
    row.append(input);
    form.append(row);
  }

  const problems = el("p", "form-problems");
  form.append(problems);

  const submitWith = (choice: string | null) => {
    const raw: Record<string, string> = {};
    for (const [name, input] of inputs) raw[name] = input.value;
    try {
      const submission = buildSubmission(task.formSpec, raw, choice);
      problems.textContent = "";
      onSubmit(submission.values, submission.choice);
    } catch (error) {
      if (error instanceof FormValidationError) {
        problems.textContent = error.problems.join("; ");
      } else {
        throw error;
      }
    }
  };

  const actions = el("div", "task-actions");
  if (view.needsChoice) {
    for (const choice of view.choices) {
      const button = el("button", "choice-button", choice);
      button.type = "button";
      button.addEventListener("click", () => submitWith(choice));
      actions.append(button);
    }
  } else {
    const button = el("button", "submit-button", "Complete");
    button.type = "button";
    button.addEventListener("click", () => submitWith(null));
    actions.append(button);
  }
  form.append(actions);
  card.append(form);
  return card;
}

export function renderTaskList(
  tasks: Task[],
  onSubmit: (
    task: Task,
    values: Record<string, unknown>,
    choice: string | null,
  ) => void,
): HTMLElement {
  const list = el("div", "task-list");
  if (tasks.length === 0) {
    list.append(el("p", "empty", "No pending tasks."));
    return list;
  }
  for (const task of tasks) {
    list.append(renderTaskCard(task, (values, choice) => onSubmit(task, values, choice)));
  }
  return list;
}

export function renderModels(
  models: ModelRecord[],
  onStart: (modelId: string, name: string) => void,
): HTMLElement {
  const wrap = el("div", "model-list");
  if (models.length === 0) wrap.append(el("p", "empty", "No models uploaded."));
  for (const model of models) {
    const row = el("section", "model-row");
    row.dataset.modelId = model.modelId;
    row.append(el("strong", "model-name", `${model.name} (${model.modelId})`));
    row.append(el("span", "model-kind", model.sourceKind));
    row.append(el("span", "model-subjects", model.subjects.join(", ")));
    const nameInput = el("input", "instance-name");
    nameInput.placeholder = "instance name";
    const start = el("button", "start-button", "Start instance");
    start.type = "button";
    start.addEventListener("click", () =>
      onStart(model.modelId, nameInput.value || model.name),
    );
    row.append(nameInput, start);
    wrap.append(row);
  }
  return wrap;
}

export function renderStatus(
  status: InstanceStatus,
  onStop: (instanceId: string) => void,
): HTMLElement {
  const card = el("section", "instance-card");
  card.dataset.instanceId = status.instanceId;
  const title = el(
    "header",
    "instance-title",
    `${status.name} (${status.instanceId}) — ${status.modelName}`,
  );
  card.append(title);
  card.append(
    el(
      "p",
      status.completed ? "instance-completed" : "instance-running",
      status.completed ? "completed" : "running",
    ),
  );
  const table = el("table", "subject-table");
  for (const subject of status.subjects) {
    const row = el("tr", subject.alive ? "subject-alive" : "subject-done");
    row.append(
      el("td", "subject-name", subject.subject),
      el("td", "subject-state", subject.currentStateLabel),
      el("td", "subject-alive", subject.alive ? "alive" : "exited"),
    );
    table.append(row);
  }
  card.append(table);
  if (!status.completed) {
    const stop = el("button", "stop-button", "Stop");
    stop.type = "button";
    stop.addEventListener("click", () => onStop(status.instanceId));
    card.append(stop);
  }
  return card;
}

export function renderNotice(message: string, kind: "info" | "error" = "info"): HTMLElement {
  return el("p", `notice notice-${kind}`, message);
}

export function renderAccessDenied(page: string): HTMLElement {
  return el(
    "p",
    "access-denied",
    `The ${page} page needs the admin role.`,
  );
}
