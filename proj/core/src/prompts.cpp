#include "modulo/prompts.hpp"

#include "modulo/parsers.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <sstream>

namespace modulo {

const std::string kBinaryFeedback =
    "This time doesn't work. Come up with an alternative schedule";

namespace {

// ---------------------------------------------------------------------------
// Template assets
// ---------------------------------------------------------------------------

const std::string kTravelInitialHeader =
    "You are a proficient planner. Based on the provided information and query, please give me a "
    "detailed plan, including specifics such as flight numbers (e.g., F0123456), restaurant names, "
    "and accommodation names. Note that all the information in your plan should be derived from "
    "the provided data. You should give a travel plan in JSON format as shown in the example "
    "below. Additionally, all details should align with commonsense. The symbol '-' indicates "
    "that information is unnecessary. For example, in the provided sample, you do not need to "
    "plan after returning to the departure city. When you travel to two cities in one day, you "
    "should note it in the 'current_city' section as in the example (i.e., from A to B).";

const std::string kTravelFixHeader =
    "You are a proficient planner. Based on the provided information, query, and the backprompt, "
    "please fix the given travel plan, including specifics such as flight numbers (e.g., "
    "F0123456), restaurant names, and accommodation names. Note that all the information in your "
    "plan should be derived from the provided data. You should give a travel plan in JSON format "
    "as shown in the example below. Additionally, all details should align with commonsense. The "
    "symbol '-' indicates that information is unnecessary. For example, in the provided sample, "
    "you do not need to plan after returning to the departure city. When you travel to two cities "
    "in one day, you should note it in the 'current_city' section as in the example (i.e., from A "
    "to B).";

const std::string kTravelExample = R"(***** Example *****
Query: Could you create a travel plan for 7 people from Ithaca to Charlotte spanning 3 days, from March 8th to March 14th, 2022, with a budget of $30,200?
Travel Plan:
[
    {
        "day": 1,
        "people_number": 7,
        "current_city": "from Ithaca to Charlotte",
        "transportation": "Flight Number: F3633413, from Ithaca to Charlotte, Departure Time: 05:38, Arrival Time: 07:46",
        "breakfast": "Nagaland's Kitchen, Charlotte",
        "attraction": "The Charlotte Museum of History, Charlotte",
        "lunch": "Cafe Maple Street, Charlotte",
        "dinner": "Bombay Vada Pav, Charlotte",
        "accommodation": "Affordable Spacious Refurbished Room in Bushwick!, Charlotte"
    },
    {
        "day": 2,
        "people_number": 7,
        "current_city": "Charlotte",
        "transportation": "-",
        "breakfast": "Olive Tree Cafe, Charlotte",
        "attraction": "The Mint Museum, Charlotte",
        "lunch": "Birbal Ji Dhaba, Charlotte",
        "dinner": "Pind Balluchi, Charlotte",
        "accommodation": "Affordable Spacious Refurbished Room in Bushwick!, Charlotte"
    },
    {
        "day": 3,
        "people_number": 7,
        "current_city": "from Charlotte to Ithaca",
        "transportation": "Flight Number: F3786167, from Charlotte to Ithaca, Departure Time: 21:42, Arrival Time: 23:26",
        "breakfast": "Subway, Charlotte",
        "attraction": "Books Monument, Charlotte",
        "lunch": "Coco Bambu, Charlotte",
        "dinner": "-",
        "accommodation": "-"
    }
]
***** Example Ends *****)";

const std::string kCalendarInitialHeader =
    "You are an expert at scheduling meetings. You are given a few constraints on the existing "
    "schedule of each participant, the meeting duration, and possibly some preferences on the "
    "meeting time. Note there exists a solution that works with existing schedule of every "
    "participant. Produce only one meeting time, strictly adhering to the format shown in the "
    "examples below, without providing any extra information. Here are a few example tasks and "
    "solutions:";

const std::string kCalendarFixHeader =
    "You are an expert at scheduling meetings. You are given a few constraints on the existing "
    "schedule of each participant, the meeting duration, and possibly some preferences on the "
    "meeting time. Propose a different time to meet than the one provided below such that it "
    "meets as many specified constraints as possible. Note there exists a solution that works "
    "with existing schedule of every participant. Produce only one meeting time, strictly "
    "adhering to the format shown in the examples below, without providing any extra "
    "information. Here are a few example tasks and solutions:";

const std::string kCalendarExamples =
    "TASK: You need to schedule a meeting for Roger, Karen and Dorothy for half an hour between the work hours of 9:00 to 17:00 on Monday. \n"
    "\n"
    "Here are the existing schedules for everyone during the day: \n"
    "Roger's calendar is wide open the entire day.\n"
    "Karen has meetings on Monday during 10:00 to 10:30, 11:30 to 12:00, 12:30 to 13:00, 14:00 to 15:00, 15:30 to 16:00; \n"
    "Dorothy is busy on Monday during 9:00 to 10:00, 10:30 to 11:00, 11:30 to 12:00, 12:30 to 13:00, 14:00 to 15:30, 16:00 to 17:00; \n"
    "\n"
    "You would like to schedule the meeting at their earlist availability.\n"
    "Find a time that works for everyone's schedule and constraints. \n"
    "SOLUTION: Here is the proposed time: Monday, 11:00 - 11:30 \n"
    "\n"
    "TASK: You need to schedule a meeting for Alice and Bob for half an hour between the work hours of 9:00 to 17:00 on Tuesday. \n"
    "\n"
    "Here are the existing schedules for everyone during the day: \n"
    "Alice has meetings on Tuesday during 9:00 to 11:30, 13:00 to 15:00; \n"
    "Bob has meetings on Tuesday during 11:30 to 12:30, 15:30 to 17:00; \n"
    "\n"
    "Find a time that works for everyone's schedule and constraints. \n"
    "SOLUTION: Here is the proposed time: Tuesday, 12:30 - 13:00 \n"
    "\n"
    "TASK: You need to schedule a meeting for Carol, Dave and Erin for one hour between the work hours of 9:00 to 17:00 on Wednesday. \n"
    "\n"
    "Here are the existing schedules for everyone during the day: \n"
    "Carol has meetings on Wednesday during 9:00 to 10:00, 12:00 to 13:00; \n"
    "Dave has meetings on Wednesday during 10:00 to 11:00, 14:30 to 15:30; \n"
    "Erin's calendar is wide open the entire day.\n"
    "\n"
    "Find a time that works for everyone's schedule and constraints. \n"
    "SOLUTION: Here is the proposed time: Wednesday, 11:00 - 12:00 \n"
    "\n"
    "TASK: You need to schedule a meeting for Frank and Grace for half an hour between the work hours of 9:00 to 17:00 on Monday or Tuesday. \n"
    "\n"
    "Here are the existing schedules for everyone during the day: \n"
    "Frank has meetings on Monday during 9:00 to 17:00; \n"
    "Grace has meetings on Tuesday during 9:00 to 12:00; \n"
    "\n"
    "Find a time that works for everyone's schedule and constraints. \n"
    "SOLUTION: Here is the proposed time: Tuesday, 12:00 - 12:30 \n"
    "\n"
    "TASK: You need to schedule a meeting for Henry, Irene and Jack for one hour between the work hours of 9:00 to 17:00 on Friday. \n"
    "\n"
    "Here are the existing schedules for everyone during the day: \n"
    "Henry has meetings on Friday during 9:00 to 12:00; \n"
    "Irene has meetings on Friday during 13:00 to 14:00; \n"
    "Jack has meetings on Friday during 15:00 to 16:00; \n"
    "\n"
    "You would like to schedule the meeting at their earlist availability.\n"
    "Find a time that works for everyone's schedule and constraints. \n"
    "SOLUTION: Here is the proposed time: Friday, 12:00 - 13:00 \n";

const std::string kTripInitialHeader =
    "You are an expert at planning trips. You are given a few constraints regarding the cities "
    "to visit and the durations of staying at each city. You are also given the flight "
    "information between the cities('and' suggests flights are possible both ways and 'from - to "
    "-' suggests one way flights). You can travel to any city only once.\n"
    "Produce only one plan, strictly adhering to the format shown in the examples below, without "
    "any extra information. Your answer shold start with 'SOLUTION:'.\n"
    "Here are a few example tasks and solutions:";

const std::string kTripFixHeader =
    "You are an expert at planning trips. Fix the below given trip schedule such that it meets "
    "as many specified constraints as possible. You are given a few constraints regarding the "
    "cities to visit and the durations of staying at each city. You are also given the flight "
    "information between the cities('and' suggests flights are possible both ways and 'from - to "
    "-' suggests one way flights). You can travel to any city only once.\n"
    "Produce only one plan, strictly adhering to the format shown in the examples below, without "
    "any extra information. Your answer shold start with 'SOLUTION:'.\n"
    "Here are a few example tasks and solutions:";

const std::string kTripExamples = R"(TASK: You plan to visit 10 European cities for 21 days in total. You only take direct flights to commute between cities. You plan to stay in Vienna for 3 days. You want to spend 5 days in Frankfurt. You want to spend 2 days in Oslo. You are going to attend a wedding in Oslo between day 20 and day 21. You want to spend 3 days in Prague. You would like to visit Valencia for 2 days. You want to meet a friend in Valencia between day 17 and day 18. You plan to stay in Dubrovnik for 2 days. You would like to visit Edinburgh for 5 days. From day 1 to day 5, there is a annual show you want to attend in Edinburgh. You plan to stay in London for 2 days. You plan to visit relatives in London between day 12 and day 13. You would like to visit Munich for 3 days. You would like to meet your friends at Munich between day 18 and day 20 to tour together. You would like to visit Budapest for 3 days.

Here are the cities that have direct flights:
Valencia and Munich, Vienna and Munich, Vienna and Valencia, London and Budapest, London and Oslo, Edinburgh and Budapest, Frankfurt and Budapest, Frankfurt and London, Prague and Oslo, Edinburgh and Oslo, Edinburgh and Munich, Prague and Munich, London and Prague, Edinburgh and London, Edinburgh and Frankfurt, Dubrovnik and Munich, Dubrovnik and Vienna, Munich and Oslo, Dubrovnik and Oslo, Budapest and Munich, Frankfurt and Prague, Vienna and London, Frankfurt and Vienna, Frankfurt and Oslo, Frankfurt and Munich, Vienna and Oslo, Vienna and Prague, Budapest and Oslo, Budapest and Prague, London and Valencia, London and Munich, Frankfurt and Dubrovnik, Prague and Valencia, Frankfurt and Valencia, Edinburgh and Prague, Vienna and Budapest.

Find a trip plan of visiting the cities for 21 days by taking direct flights to commute between them.
SOLUTION: Here is the trip plan for visiting the 10 European cities for 21 days:

**Day 1-5:** Arriving in Edinburgh and visit Edinburgh for 5 days.
**Day 5:** Fly from Edinburgh to Frankfurt.
**Day 5-9:** Visit Frankfurt for 5 days.
**Day 9:** Fly from Frankfurt to Dubrovnik.
**Day 9-10:** Visit Dubrovnik for 2 days.
**Day 10:** Fly from Dubrovnik to Vienna.
**Day 10-12:** Visit Vienna for 3 days.
**Day 12:** Fly from Vienna to London.
**Day 12-13:** Visit London for 2 days.
**Day 13:** Fly from London to Budapest.
**Day 13-15:** Visit Budapest for 3 days.
**Day 15:** Fly from Budapest to Prague.
**Day 15-17:** Visit Prague for 3 days.
**Day 17:** Fly from Prague to Valencia.
**Day 17-18:** Visit Valencia for 2 days.
**Day 18:** Fly from Valencia to Munich.
**Day 18-20:** Visit Munich for 3 days.
**Day 20:** Fly from Munich to Oslo.
**Day 20-21:** Visit Oslo for 2 days.

TASK: You plan to visit 3 European cities for 7 days in total. You only take direct flights to commute between cities. You plan to stay in Paris for 3 days. You want to spend 2 days in Lyon. You would like to visit Nice for 4 days. You are going to attend a wedding in Nice between day 6 and day 7.

Here are the cities that have direct flights:
Paris and Lyon, Lyon and Nice.

Find a trip plan of visiting the cities for 7 days by taking direct flights to commute between them.
SOLUTION: Here is the trip plan for visiting the 3 European cities for 7 days:

**Day 1-3:** Arriving in Paris and visit Paris for 3 days.
**Day 3:** Fly from Paris to Lyon.
**Day 3-4:** Visit Lyon for 2 days.
**Day 4:** Fly from Lyon to Nice.
**Day 4-7:** Visit Nice for 4 days.

TASK: You plan to visit 4 European cities for 10 days in total. You only take direct flights to commute between cities. You plan to stay in Rome for 4 days. You want to spend 2 days in Milan. You would like to visit Venice for 3 days. You plan to stay in Florence for 4 days. You plan to visit relatives in Florence between day 8 and day 10.

Here are the cities that have direct flights:
Rome and Milan, Milan and Venice, from Venice to Florence.

Find a trip plan of visiting the cities for 10 days by taking direct flights to commute between them.
SOLUTION: Here is the trip plan for visiting the 4 European cities for 10 days:

**Day 1-4:** Arriving in Rome and visit Rome for 4 days.
**Day 4:** Fly from Rome to Milan.
**Day 4-5:** Visit Milan for 2 days.
**Day 5:** Fly from Milan to Venice.
**Day 5-7:** Visit Venice for 3 days.
**Day 7:** Fly from Venice to Florence.
**Day 7-10:** Visit Florence for 4 days.

TASK: You plan to visit 3 European cities for 5 days in total. You only take direct flights to commute between cities. You plan to stay in Madrid for 2 days. You want to spend 3 days in Barcelona. You would like to visit Seville for 2 days.

Here are the cities that have direct flights:
Madrid and Barcelona, Barcelona and Seville.

Find a trip plan of visiting the cities for 5 days by taking direct flights to commute between them.
SOLUTION: Here is the trip plan for visiting the 3 European cities for 5 days:

**Day 1-2:** Arriving in Madrid and visit Madrid for 2 days.
**Day 2:** Fly from Madrid to Barcelona.
**Day 2-4:** Visit Barcelona for 3 days.
**Day 4:** Fly from Barcelona to Seville.
**Day 4-5:** Visit Seville for 2 days.

TASK: You plan to visit 5 European cities for 12 days in total. You only take direct flights to commute between cities. You plan to stay in Berlin for 3 days. You have to attend a workshop in Berlin between day 1 and day 2. You want to spend 2 days in Hamburg. You would like to visit Cologne for 3 days. You plan to stay in Munich for 4 days. You would like to meet your friends at Munich between day 7 and day 8 to tour together. You would like to visit Dresden for 4 days.

Here are the cities that have direct flights:
Berlin and Hamburg, Hamburg and Cologne, Cologne and Munich, Munich and Dresden.

Find a trip plan of visiting the cities for 12 days by taking direct flights to commute between them.
SOLUTION: Here is the trip plan for visiting the 5 European cities for 12 days:

**Day 1-3:** Arriving in Berlin and visit Berlin for 3 days.
**Day 3:** Fly from Berlin to Hamburg.
**Day 3-4:** Visit Hamburg for 2 days.
**Day 4:** Fly from Hamburg to Cologne.
**Day 4-6:** Visit Cologne for 3 days.
**Day 6:** Fly from Cologne to Munich.
**Day 6-9:** Visit Munich for 4 days.
**Day 9:** Fly from Munich to Dresden.
**Day 9-12:** Visit Dresden for 4 days.)";

const std::string kMeetingInitialHeader =
    "You are a meeting planner agent. Generate a meeting schedule that meets as many specified "
    "constraints as possible. \n"
    "Produce only one plan, strictly adhering to the format shown in the examples below, without "
    "any extra information.";

const std::string kMeetingFixHeader =
    "You are a meeting planner agent. Fix the below given meeting schedule such that it meets as "
    "many specified constraints as possible. \n"
    "Produce only one plan, strictly adhering to the format shown in the examples below, without "
    "any extra information.";

const std::string kMeetingExamples = R"(You are visiting San Francisco for the day and want to meet as many friends as possible. Solve the problem by considering various different schedules and picking the best one to optimize your goals.

Travel distances (in minutes):
North Beach to Pacific Heights: 8.
North Beach to Golden Gate Park: 22.
North Beach to Sunset District: 27.
North Beach to Chinatown: 6.
Pacific Heights to North Beach: 9.
Pacific Heights to Golden Gate Park: 15.
Pacific Heights to Sunset District: 21.
Pacific Heights to Chinatown: 11.
Golden Gate Park to North Beach: 23.
Golden Gate Park to Pacific Heights: 16.
Golden Gate Park to Sunset District: 10.
Golden Gate Park to Chinatown: 23.
Sunset District to North Beach: 26.
Sunset District to Pacific Heights: 21.
Sunset District to Golden Gate Park: 11.
Sunset District to Chinatown: 30.
Chinatown to North Beach: 5.
Chinatown to Pacific Heights: 10.
Chinatown to Golden Gate Park: 23.
Chinatown to Sunset District: 29.

CONSTRAINTS: You arrive at North Beach at 9:00AM. Sarah will be at Pacific Heights from 6:45PM to 9:15PM. You'd like to meet Sarah for a minimum of 45 minutes. Kevin will be at Golden Gate Park from 9:15AM to 2:00PM. You'd like to meet Kevin for a minimum of 90 minutes. Emma will be at Chinatown from 11:00AM to 3:30PM. You'd like to meet Emma for a minimum of 60 minutes. David will be at Sunset District from 4:00PM to 8:00PM. You'd like to meet David for a minimum of 75 minutes.

SOLUTION:You start at North Beach at 9:00AM. You travel to Golden Gate Park in 22 minutes and arrive at 9:22AM. You meet Kevin for 90 minutes from 9:22AM to 10:52AM. You travel to Chinatown in 23 minutes and arrive at 11:15AM. You meet Emma for 60 minutes from 11:15AM to 12:15PM. You travel to Sunset District in 29 minutes and arrive at 12:44PM. You wait until 4:00PM. You meet David for 75 minutes from 4:00PM to 5:15PM. You travel to Pacific Heights in 21 minutes and arrive at 5:36PM. You wait until 6:45PM. You meet Sarah for 45 minutes from 6:45PM to 7:30PM.

You are visiting San Francisco for the day and want to meet as many friends as possible. Solve the problem by considering various different schedules and picking the best one to optimize your goals.

Travel distances (in minutes):
Alamo Square to Nob Hill: 11.
Alamo Square to Richmond District: 12.
Nob Hill to Alamo Square: 13.
Nob Hill to Richmond District: 17.
Richmond District to Alamo Square: 12.
Richmond District to Nob Hill: 16.

CONSTRAINTS: You arrive at Alamo Square at 9:00AM. Timothy will be at Nob Hill from 10:00AM to 1:30PM. You'd like to meet Timothy for a minimum of 60 minutes. Linda will be at Richmond District from 3:00PM to 7:45PM. You'd like to meet Linda for a minimum of 90 minutes.

SOLUTION:You start at Alamo Square at 9:00AM. You travel to Nob Hill in 11 minutes and arrive at 9:11AM. You wait until 10:00AM. You meet Timothy for 60 minutes from 10:00AM to 11:00AM. You travel to Richmond District in 17 minutes and arrive at 11:17AM. You wait until 3:00PM. You meet Linda for 90 minutes from 3:00PM to 4:30PM.

You are visiting San Francisco for the day and want to meet as many friends as possible. Solve the problem by considering various different schedules and picking the best one to optimize your goals.

Travel distances (in minutes):
Presidio to Haight-Ashbury: 15.
Haight-Ashbury to Presidio: 15.

CONSTRAINTS: You arrive at Presidio at 9:00AM. Brian will be at Haight-Ashbury from 9:45AM to 11:00AM. You'd like to meet Brian for a minimum of 75 minutes.

SOLUTION:You start at Presidio at 9:00AM. You travel to Haight-Ashbury in 15 minutes and arrive at 9:15AM. You wait until 9:45AM. You meet Brian for 75 minutes from 9:45AM to 11:00AM.

You are visiting San Francisco for the day and want to meet as many friends as possible. Solve the problem by considering various different schedules and picking the best one to optimize your goals.

Travel distances (in minutes):
Marina District to Castro: 22.
Marina District to Bayview: 27.
Castro to Marina District: 21.
Castro to Bayview: 19.
Bayview to Marina District: 27.
Bayview to Castro: 20.

CONSTRAINTS: You arrive at Marina District at 9:00AM. Joseph will be at Castro from 9:30AM to 12:00PM. You'd like to meet Joseph for a minimum of 90 minutes. Betty will be at Bayview from 1:15PM to 6:00PM. You'd like to meet Betty for a minimum of 120 minutes. Charles will be at Marina District from 7:00PM to 9:30PM. You'd like to meet Charles for a minimum of 60 minutes.

SOLUTION:You start at Marina District at 9:00AM. You travel to Castro in 22 minutes and arrive at 9:22AM. You wait until 9:30AM. You meet Joseph for 90 minutes from 9:30AM to 11:00AM. You travel to Bayview in 19 minutes and arrive at 11:19AM. You wait until 1:15PM. You meet Betty for 120 minutes from 1:15PM to 3:15PM. You travel to Marina District in 27 minutes and arrive at 3:42PM. You wait until 7:00PM. You meet Charles for 60 minutes from 7:00PM to 8:00PM.

You are visiting San Francisco for the day and want to meet as many friends as possible. Solve the problem by considering various different schedules and picking the best one to optimize your goals.

Travel distances (in minutes):
Twin Peaks to Noe Valley: 9.
Twin Peaks to Glen Park: 12.
Noe Valley to Twin Peaks: 10.
Noe Valley to Glen Park: 8.
Glen Park to Twin Peaks: 12.
Glen Park to Noe Valley: 8.

CONSTRAINTS: You arrive at Twin Peaks at 9:00AM. Sandra will be at Noe Valley from 11:30AM to 2:00PM. You'd like to meet Sandra for a minimum of 45 minutes. Kenneth will be at Glen Park from 2:45PM to 5:15PM. You'd like to meet Kenneth for a minimum of 75 minutes.

SOLUTION:You start at Twin Peaks at 9:00AM. You travel to Noe Valley in 9 minutes and arrive at 9:09AM. You wait until 11:30AM. You meet Sandra for 45 minutes from 11:30AM to 12:15PM. You travel to Glen Park in 8 minutes and arrive at 12:23PM. You wait until 2:45PM. You meet Kenneth for 75 minutes from 2:45PM to 4:00PM.)";

// ---------------------------------------------------------------------------
// Helpers
// ---------------------------------------------------------------------------

const TravelCase& travel_case_of(const QueryInstance& instance)
{
    if (instance.domain != Domain::travel) {
        throw MissingTemplate("instance is not a travel instance");
    }
    return std::get<TravelCase>(instance.query);
}

std::string rendered_attempt(const IterationRecord& record)
{
    if (record.format.passed && record.format.parsed) {
        return render_plan(*record.format.parsed);
    }
    return record.raw_response;
}

std::vector<std::string> failure_messages(const IterationRecord& record)
{
    if (!record.format.passed) {
        return record.format.messages;
    }
    if (record.report) {
        return collect_messages(*record.report);
    }
    return {};
}

std::string feedback_block(Domain domain, const IterationRecord& record, FeedbackMode mode)
{
    if (mode == FeedbackMode::binary) {
        return kBinaryFeedback;
    }
    std::vector<std::string> messages = failure_messages(record);
    if (mode == FeedbackMode::first_only && messages.size() > 1) {
        messages.resize(1);
    }
    return render_feedback(domain, messages);
}

// The most recent history_n failures, minus the one already embedded as the
// previous plan. unique_only keeps the latest occurrence of each rendered
// text.
std::vector<const IterationRecord*> history_window(const std::vector<IterationRecord>& history,
                                                   const LoopConfig& cfg)
{
    std::vector<const IterationRecord*> failures;
    for (const IterationRecord& record : history) {
        if (!record.all_passed()) {
            failures.push_back(&record);
        }
    }
    if (cfg.history_n <= 0 || failures.empty()) {
        return {};
    }
    size_t n = std::min<size_t>(cfg.history_n, failures.size());
    std::vector<const IterationRecord*> window(failures.end() - n, failures.end());
    if (cfg.history_unique_only) {
        std::set<std::string> seen;
        std::vector<const IterationRecord*> unique;
        for (auto it = window.rbegin(); it != window.rend(); ++it) {
            if (seen.insert(rendered_attempt(**it)).second) {
                unique.push_back(*it);
            }
        }
        std::reverse(unique.begin(), unique.end());
        window = std::move(unique);
    }
    window.pop_back();  // the last failure is the {previous_plan}
    return window;
}

std::string history_block(Domain domain, const std::vector<IterationRecord>& history,
                          const LoopConfig& cfg)
{
    std::vector<const IterationRecord*> window = history_window(history, cfg);
    if (window.empty()) {
        return "";
    }
    std::string out = "Previously generated incorrect plans:\n\n";
    int i = 0;
    for (const IterationRecord* record : window) {
        ++i;
        out += fmt::format("Incorrect plan {}:\n{}\n\n", i, rendered_attempt(*record));
        if (cfg.history_include_critiques && cfg.feedback_mode != FeedbackMode::binary) {
            out += fmt::format("Errors with incorrect plan {}:\n{}\n\n", i,
                               render_feedback(domain, failure_messages(*record)));
        }
    }
    return out;
}

std::string finish_prompt(std::string prompt, const LoopConfig& cfg)
{
    if (cfg.strategy == LoopStrategy::bfs && cfg.bfs_branch_k > 1) {
        prompt += fmt::format(
            "\n\nProvide {} alternative solutions to this task. Start each alternative on a new "
            "line beginning with 'Alternative 1:', 'Alternative 2:', and so on.",
            cfg.bfs_branch_k);
    }
    if (cfg.cot_suffix) {
        prompt += "\nThink step-by-step";
    }
    return prompt;
}

std::set<std::string> flagged_so_far(const std::vector<IterationRecord>& history)
{
    std::set<std::string> flagged;
    for (const IterationRecord& record : history) {
        if (record.report) {
            std::set<std::string> names = flagged_accommodations(*record.report);
            flagged.insert(names.begin(), names.end());
        }
    }
    return flagged;
}

}  // namespace

std::string render_feedback(Domain domain, const std::vector<std::string>& messages)
{
    std::string out;
    int i = 0;
    for (const std::string& message : messages) {
        ++i;
        if (i > 1) {
            out += "\n";
        }
        switch (domain) {
        case Domain::travel:
        case Domain::calendar:
            out += fmt::format("{}. {}", i, message);
            break;
        case Domain::trip:
            out += message;
            break;
        case Domain::meeting:
            out += fmt::format("Had error: {}", message);
            break;
        }
    }
    return out;
}

std::string filter_context(const std::string& sandbox_block, const std::set<std::string>& flagged)
{
    if (flagged.empty()) {
        return sandbox_block;
    }
    std::string out;
    std::istringstream lines(sandbox_block);
    std::string line;
    while (std::getline(lines, line)) {
        bool drop = false;
        for (const std::string& name : flagged) {
            if (line.starts_with("- Accommodation: " + name + ",")) {
                drop = true;
                break;
            }
        }
        if (!drop) {
            out += line;
            out += "\n";
        }
    }
    if (!sandbox_block.empty() && sandbox_block.back() != '\n' && !out.empty()) {
        out.pop_back();
    }
    return out;
}

std::string build_initial_prompt(const QueryInstance& instance, const LoopConfig& cfg)
{
    std::string prompt;
    switch (instance.domain) {
    case Domain::travel: {
        const TravelCase& c = travel_case_of(instance);
        prompt = fmt::format(
            "{}\n\n{}\n\nGiven information:\n{}\nQuery: {}\nTravel Plan (please only output the "
            "JSON string without explanatory information):\n",
            kTravelInitialHeader, kTravelExample, render_sandbox_context(c.sandbox),
            instance.prompt_text);
        break;
    }
    case Domain::calendar:
        prompt = fmt::format("{}\n\n{}\n\nQuery:\n{}", kCalendarInitialHeader, kCalendarExamples,
                             instance.prompt_text);
        break;
    case Domain::trip:
        prompt = fmt::format("{}\n\n{}\n\nQuery:\n{}", kTripInitialHeader, kTripExamples,
                             instance.prompt_text);
        break;
    case Domain::meeting:
        prompt = fmt::format("{}\n\n{}\n\nQuery:\n{}", kMeetingInitialHeader, kMeetingExamples,
                             instance.prompt_text);
        break;
    }
    return finish_prompt(std::move(prompt), cfg);
}

std::string build_backprompt(const QueryInstance& instance,
                             const std::vector<IterationRecord>& history, const LoopConfig& cfg)
{
    if (history.empty() || history.back().all_passed()) {
        throw NoFailureToReport();
    }
    const IterationRecord& last = history.back();
    const std::string previous = rendered_attempt(last);
    const std::string feedback = feedback_block(instance.domain, last, cfg.feedback_mode);
    const std::string past = history_block(instance.domain, history, cfg);

    std::string prompt;
    switch (instance.domain) {
    case Domain::travel: {
        const TravelCase& c = travel_case_of(instance);
        std::string context = render_sandbox_context(c.sandbox);
        if (cfg.filtering_enabled) {
            context = filter_context(context, flagged_so_far(history));
        }
        prompt = fmt::format(
            "{}\n\n{}\n\nGiven information:\n{}\nQuery: {}\n\nTravel Plan:\n\n{}\n\n{}By "
            "inspecting your plan we find the following issue. Please refine your plan according "
            "to the feedback below:\n{}\n\nFixed Travel Plan (please only output the JSON string "
            "without explanatory information):\n",
            kTravelFixHeader, kTravelExample, context, instance.prompt_text, previous, past,
            feedback);
        break;
    }
    case Domain::calendar:
        prompt = fmt::format(
            "{}\n\n{}\n\nQuery:\n{}\n\n{}Incorrect meeting time:\n{}\n\nErrors with the above "
            "meeting time:\n{}\n\nFixed meeting time: \n",
            kCalendarFixHeader, kCalendarExamples, instance.prompt_text, past, previous, feedback);
        break;
    case Domain::trip:
        prompt = fmt::format(
            "{}\n\n{}\n\nQuery:\n{}\n\n{}Incorrect plan:\n{}\n\nErrors with the above "
            "plan:\n{}\n\nFixed plan:\n",
            kTripFixHeader, kTripExamples, instance.prompt_text, past, previous, feedback);
        break;
    case Domain::meeting:
        prompt = fmt::format(
            "{}\n\n{}\n\nQuery:\n{}\n\n{}Incorrect plan:\n{}\n\nErrors with the above "
            "plan:\n{}\n\nFixed plan: (Your response should start with 'SOLUTION:', and follow "
            "the same solution format as shown above.)\n",
            kMeetingFixHeader, kMeetingExamples, instance.prompt_text, past, previous, feedback);
        break;
    }
    return finish_prompt(std::move(prompt), cfg);
}

// ---------------------------------------------------------------------------
// Canonical query blocks
// ---------------------------------------------------------------------------

namespace {

std::string join_names(const std::vector<Participant>& participants)
{
    std::string out;
    for (size_t i = 0; i < participants.size(); ++i) {
        if (i > 0) {
            out += i + 1 == participants.size() ? " and " : ", ";
        }
        out += participants[i].name;
    }
    return out;
}

std::string join_days(const std::vector<Weekday>& days)
{
    std::string out;
    for (size_t i = 0; i < days.size(); ++i) {
        if (i > 0) {
            out += i + 1 == days.size() ? " or " : ", ";
        }
        out += weekday_name(days[i]);
    }
    return out;
}

std::string with_thousands(long long value)
{
    std::string digits = std::to_string(value);
    std::string out;
    int count = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        if (count > 0 && count % 3 == 0 && *it != '-') {
            out += ',';
        }
        out += *it;
        ++count;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace

std::string render_calendar_query_text(const CalendarQuery& q)
{
    std::string out = fmt::format(
        "TASK: You need to schedule a meeting for {} for {} between the work hours of {} to {} on "
        "{}. \n\nHere are the existing schedules for everyone during the day: \n",
        join_names(q.participants), q.duration_minutes == 30 ? "half an hour" : "one hour",
        format_time_24h(q.work_window.start), format_time_24h(q.work_window.end),
        join_days(q.candidate_days));
    for (const Participant& p : q.participants) {
        bool any = false;
        for (Weekday day : q.candidate_days) {
            auto it = p.busy.find(day);
            if (it == p.busy.end() || it->second.empty()) {
                continue;
            }
            any = true;
            std::string blocks;
            for (size_t i = 0; i < it->second.size(); ++i) {
                if (i > 0) {
                    blocks += ", ";
                }
                blocks += fmt::format("{} to {}", format_time_24h(it->second[i].start),
                                      format_time_24h(it->second[i].end));
            }
            out += fmt::format("{} has meetings on {} during {}; \n", p.name, weekday_name(day),
                               blocks);
        }
        if (!any) {
            out += fmt::format("{}'s calendar is wide open the entire day.\n", p.name);
        }
    }
    out += "\n";
    if (q.prefer_earliest) {
        out += "You would like to schedule the meeting at their earlist availability.\n";
    }
    out += "Find a time that works for everyone's schedule and constraints. \nSOLUTION: ";
    return out;
}

std::string render_trip_query_text(const TripQuery& q)
{
    std::string out = fmt::format(
        "You plan to visit {} European cities for {} days in total. You only take direct flights "
        "to commute between cities.",
        q.stays.size(), q.total_days);
    for (const CityStay& stay : q.stays) {
        out += fmt::format(" You plan to stay in {} for {} days.", stay.city, stay.required_days);
        for (const TripEvent& e : q.events) {
            if (e.city == stay.city) {
                out += fmt::format(" You have to attend an event in {} between day {} and day {}.",
                                   e.city, e.start_day, e.end_day);
            }
        }
    }
    out += "\n\nHere are the cities that have direct flights:\n";
    for (size_t i = 0; i < q.flights.size(); ++i) {
        const FlightEdge& e = q.flights[i];
        if (i > 0) {
            out += ", ";
        }
        out += e.bidirectional ? fmt::format("{} and {}", e.from, e.to)
                               : fmt::format("from {} to {}", e.from, e.to);
    }
    out += fmt::format(
        ".\n\nFind a trip plan of visiting the cities for {} days by taking direct flights to "
        "commute between them.\n",
        q.total_days);
    return out;
}

std::string render_meeting_query_text(const MeetingQuery& q)
{
    std::string out =
        "You are visiting San Francisco for the day and want to meet as many friends as "
        "possible. Solve the problem by considering various different schedules and picking the "
        "best one to optimize your goals.\n\nTravel distances (in minutes):\n";
    std::vector<std::string> locations{q.start_location};
    for (const FriendConstraint& f : q.friends) {
        if (std::find(locations.begin(), locations.end(), f.location) == locations.end()) {
            locations.push_back(f.location);
        }
    }
    for (const std::string& from : locations) {
        for (const std::string& to : locations) {
            if (from == to) {
                continue;
            }
            if (auto minutes = q.travel_time(from, to)) {
                out += fmt::format("{} to {}: {}.\n", from, to, *minutes);
            }
        }
    }
    out += fmt::format("\nCONSTRAINTS: You arrive at {} at {}.", q.start_location,
                       format_time_12h(q.arrival));
    for (const FriendConstraint& f : q.friends) {
        out += fmt::format(
            " {} will be at {} from {} to {}. You'd like to meet {} for a minimum of {} minutes.",
            f.name, f.location, format_time_12h(f.window.start), format_time_12h(f.window.end),
            f.name, f.min_duration_minutes);
    }
    out += "\n";
    return out;
}

std::string render_travel_query_text(const TravelQuery& q)
{
    const std::string dest = q.destinations.empty() ? "" : q.destinations.front();
    std::string out = fmt::format(
        "Please create a travel plan for {} departing from {} and heading to {} for a {}-day "
        "trip. Can you help me keep this journey within a budget of ${}?",
        q.people == 1 ? std::string("1 person") : fmt::format("{} people", q.people), q.origin,
        dest, q.days, with_thousands(static_cast<long long>(q.budget)));
    for (const TravelConstraint& c : q.constraints) {
        switch (c.kind) {
        case TravelConstraintKind::room_rule:
            out += fmt::format(" The accommodation must allow {}.", c.value);
            break;
        case TravelConstraintKind::room_type:
            out += fmt::format(" The room type should be {}.", c.value);
            break;
        case TravelConstraintKind::cuisine:
            out += fmt::format(" We would like to try {} food.", c.value);
            break;
        case TravelConstraintKind::transport_mode:
            out += fmt::format(" The transportation preference is {}.", c.value);
            break;
        }
    }
    return out;
}

FeedbackMode parse_feedback_mode(std::string_view name)
{
    if (name == "full") return FeedbackMode::full;
    if (name == "binary") return FeedbackMode::binary;
    if (name == "first" || name == "first_only") return FeedbackMode::first_only;
    throw std::invalid_argument(fmt::format("unknown feedback mode '{}'", std::string(name)));
}

std::string_view feedback_mode_name(FeedbackMode mode)
{
    switch (mode) {
    case FeedbackMode::full: return "full";
    case FeedbackMode::binary: return "binary";
    case FeedbackMode::first_only: return "first";
    }
    return "full";
}

}  // namespace modulo
