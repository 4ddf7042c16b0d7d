// @vitest-environment happy-dom
import { describe, expect, it, vi } from "vitest";

import { renderStatus, renderTaskCard } from "../src/render.js";
import type { InstanceStatus, Task } from "../src/types.js";

const TASK: Task = {
  requestId: 3,
  instanceId: "i-1",
  formSpec: {
    fields: [
      { name: "applicantName", displayName: "Applicant name", fieldType: "string", readOnly: false },
      { name: "availableFrom", displayName: "Available from", fieldType: "date", readOnly: false },
      { name: "yearsOfExperience", displayName: "Years", fieldType: "integer", readOnly: false },
    ],
    choices: ["invite", "reject"],
  },
  context: {
    instanceName: "apply-now",
    modelName: "hiring",
    subjectLabel: "Company",
    stateLabel: "Check application",
  },
};

describe("task card", () => {
  it("renders the context banner", () => {
    const card = renderTaskCard(TASK, () => {});
    expect(card.querySelector(".context-state")?.textContent).toBe("Check application");
    expect(card.querySelector(".context-subject")?.textContent).toBe("Company");
    expect(card.querySelector(".context-instance")?.textContent).toBe("apply-now");
    expect(card.querySelector(".context-model")?.textContent).toBe("hiring");
  });

  it("renders a date picker for date fields and matching widgets otherwise", () => {
    const card = renderTaskCard(TASK, () => {});
    const date = card.querySelector<HTMLInputElement>("input[name=availableFrom]");
    expect(date?.type).toBe("date");
    const integer = card.querySelector<HTMLInputElement>("input[name=yearsOfExperience]");
    expect(integer?.type).toBe("number");
    const text = card.querySelector<HTMLInputElement>("input[name=applicantName]");
    expect(text?.type).toBe("text");
  });

  it("submits the chosen branch with validated values only", () => {
    const onSubmit = vi.fn();
    const card = renderTaskCard(TASK, onSubmit);
    (card.querySelector("input[name=applicantName]") as HTMLInputElement).value = "Jo";
    (card.querySelector("input[name=availableFrom]") as HTMLInputElement).value = "2026-09-01";
    (card.querySelector("input[name=yearsOfExperience]") as HTMLInputElement).value = "4";
    const buttons = card.querySelectorAll<HTMLButtonElement>(".choice-button");
    expect([...buttons].map((b) => b.textContent)).toEqual(["invite", "reject"]);
    buttons[0]!.click();
    expect(onSubmit).toHaveBeenCalledWith(
      { applicantName: "Jo", availableFrom: "2026-09-01", yearsOfExperience: 4 },
      "invite",
    );
  });

  it("shows validation problems instead of submitting", () => {
    const onSubmit = vi.fn();
    const card = renderTaskCard(TASK, onSubmit);
    card.querySelectorAll<HTMLButtonElement>(".choice-button")[0]!.click();
    expect(onSubmit).not.toHaveBeenCalled();
    expect(card.querySelector(".form-problems")?.textContent).toMatch(/required/);
  });
});

describe("status card", () => {
  const STATUS: InstanceStatus = {
    instanceId: "i-1",
    name: "apply-now",
    modelName: "hiring",
    completed: true,
    subjects: [
      { subject: "Applicant", currentStateLabel: "Invited", alive: false },
      { subject: "Company", currentStateLabel: "Done", alive: false },
    ],
  };

  it("shows completion and per-subject states", () => {
    const card = renderStatus(STATUS, () => {});
    expect(card.querySelector(".instance-completed")?.textContent).toBe("completed");
    const rows = card.querySelectorAll(".subject-table tr");
    expect(rows.length).toBe(2);
    expect(card.textContent).toContain("Invited");
    expect(card.querySelector(".stop-button")).toBeNull();
  });
});
